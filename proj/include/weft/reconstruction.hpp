#pragma once

#include <string>
#include <vector>

#include "weft/phase_space.hpp"
#include "weft/state.hpp"
#include "weft/weak_values.hpp"

namespace weft {

/// Recovered state plus non-fatal diagnostics (e.g. poorly supported inputs).
struct Reconstruction {
    SampledState state;
    std::vector<std::string> warnings;
};

/// Recovers phi from W = W(phi, psi), the known psi and an auxiliary gamma:
///   phi(x) = 2 / <psi|gamma> * sum_z conj(W(z)) [T_GR(z) gamma](x) dx dp.
/// Throws OrthogonalityError when |<psi|gamma>| <= overlap_tolerance.
Reconstruction reconstruct_phi(const PhaseSpaceField &W, const SampledState &psi,
                               const SampledState &gamma,
                               double overlap_tolerance = default_overlap_tolerance);

/// Recovers psi from W = W(phi, psi) and the known phi:
///   psi(x) = 2 / <phi|gamma> * sum_z W(z) [T_GR(z) gamma](x) dx dp.
Reconstruction reconstruct_psi(const PhaseSpaceField &W, const SampledState &phi,
                               const SampledState &gamma,
                               double overlap_tolerance = default_overlap_tolerance);

enum class Unknown { phi, psi };

/// Same recovery from the quasi-distribution rho = W / overlap, where
/// overlap = <phi|psi> must be supplied.
Reconstruction reconstruct_from_rho(const PhaseSpaceField &rho, const SampledState &known,
                                    const SampledState &gamma, cplx overlap, Unknown which,
                                    double overlap_tolerance = default_overlap_tolerance);

/// Standard Gaussian centred on the grid with width sqrt(hbar).
SampledState default_gamma(const Grid &grid);

struct ReconstructionError {
    double max_abs;
    double l2;
    double fidelity; ///< |<truth|rec>| / (||truth|| ||rec||), 0 if undefined
    bool fidelity_defined;
};

ReconstructionError reconstruction_error(const SampledState &recovered, const SampledState &truth);

} // namespace weft
