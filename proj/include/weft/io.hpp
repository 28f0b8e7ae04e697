#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "weft/phase_space.hpp"
#include "weft/reconstruction.hpp"
#include "weft/state.hpp"
#include "weft/verification.hpp"
#include "weft/weak_values.hpp"

#include <json.hpp>

namespace weft::io {

inline constexpr const char *schema_version = "1";

/// A state plus the optional label carried by a state file.
struct StateFile {
    SampledState state;
    std::string label;
};

/// Field plus what it holds ("cross_wigner", "rho", "cross_ambiguity", ...)
/// and, for rho, the overlap <phi|psi> it was divided by.
struct FieldFile {
    PhaseSpaceField field;
    std::string quantity;
    std::optional<cplx> overlap;
};

enum class FieldFormat { json, csv };

StateFile load_state(const std::filesystem::path &path);
void save_state(const SampledState &state, const std::filesystem::path &path,
                const std::string &label = {});

nlohmann::json state_to_json(const SampledState &state, const std::string &label = {});
StateFile state_from_json(const nlohmann::json &doc);

FieldFile load_field(const std::filesystem::path &path);
void dump_field(const FieldFile &field, const std::filesystem::path &path, FieldFormat format);
/// Picks csv for a ".csv" extension and json otherwise.
FieldFormat format_for(const std::filesystem::path &path);

nlohmann::json field_to_json(const FieldFile &field);
FieldFile field_from_json(const nlohmann::json &doc);
std::string field_to_csv(const PhaseSpaceField &field);

nlohmann::json report_to_json(const VerificationReport &report);
nlohmann::json weak_value_to_json(const WeakValueReport &report, cplx overlap, double hbar,
                                  const std::string &observable);
nlohmann::json reconstruction_error_to_json(const ReconstructionError &err);

/// "%.17g": enough digits to round-trip any finite double.
std::string format_double(double v);

} // namespace weft::io
