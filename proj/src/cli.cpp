#include "weft/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "weft/errors.hpp"
#include "weft/io.hpp"
#include "weft/phase_space.hpp"
#include "weft/reconstruction.hpp"
#include "weft/verification.hpp"
#include "weft/weak_values.hpp"

namespace weft::cli {

namespace {

using nlohmann::json;

struct FieldArgs {
    std::string phi, psi, out, format;
};

io::FieldFormat resolve_format(const FieldArgs &a) {
    if (a.format == "csv")
        return io::FieldFormat::csv;
    if (a.format == "json")
        return io::FieldFormat::json;
    return io::format_for(a.out);
}

ObservableSymbol parse_observable(const std::string &text, const Grid &grid) {
    if (text == "x")
        return observable::CoordinateX{};
    if (text == "p")
        return observable::CoordinateP{};
    if (text.rfind("proj:", 0) == 0) {
        std::size_t index = 0;
        try {
            std::size_t used = 0;
            const long v = std::stol(text.substr(5), &used);
            if (used != text.size() - 5 || v < 0)
                throw std::invalid_argument(text);
            index = static_cast<std::size_t>(v);
        } catch (const std::exception &) {
            throw ParseError("--observable: cannot parse projector index in \"" + text + "\"");
        }
        if (index >= grid.size())
            throw PreconditionError("--observable: projector index " + std::to_string(index) +
                                    " is outside the position lattice [0, " + std::to_string(grid.size()) + ")");
        return observable::PositionProjector{index};
    }
    throw ParseError("--observable must be x, p or proj:<index>, got \"" + text + "\"");
}

double momentum_at_index(const Grid &grid, long index) {
    if (index < 0 || static_cast<std::size_t>(index) >= grid.size())
        throw PreconditionError("--p0-index " + std::to_string(index) + " is outside the momentum lattice [0, " +
                                std::to_string(grid.size()) + ")");
    return grid.p(static_cast<std::size_t>(index));
}

} // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Cross-Wigner transforms, weak values and state reconstruction on a 1-D grid"};
    app.name(args.empty() ? "wigner-weft" : args.front());
    app.require_subcommand(1);

    FieldArgs wigner_args;
    auto *wigner = app.add_subcommand("wigner", "Cross-Wigner transform W(phi, psi)");
    FieldArgs ambiguity_args;
    auto *ambiguity = app.add_subcommand("ambiguity", "Cross-ambiguity function A(phi, psi)");
    FieldArgs rho_args;
    auto *rho = app.add_subcommand("rho", "Weak-value quasi-distribution W(phi, psi) / <phi|psi>");
    for (auto [cmd, a] : {std::pair{wigner, &wigner_args}, {ambiguity, &ambiguity_args}, {rho, &rho_args}}) {
        cmd->add_option("--phi", a->phi, "Post-selected state file")->required();
        cmd->add_option("--psi", a->psi, "Pre-selected state file")->required();
        cmd->add_option("--out", a->out, "Output path (.csv or .json)")->required();
        cmd->add_option("--format", a->format, "Force json or csv")->check(CLI::IsMember({"json", "csv"}));
    }

    std::string wv_phi, wv_psi, wv_observable, wv_route = "rho";
    double wv_g = 1.0, wv_v = 1.0;
    auto *weak = app.add_subcommand("weak-value", "Weak value of x, p or a position projector");
    weak->add_option("--phi", wv_phi, "Post-selected state file")->required();
    weak->add_option("--psi", wv_psi, "Pre-selected state file")->required();
    weak->add_option("--observable", wv_observable, "x | p | proj:<x_index>")->required();
    weak->add_option("--g", wv_g, "Coupling strength");
    weak->add_option("--v", wv_v, "Pointer readout parameter");
    weak->add_option("--route", wv_route, "rho (phase-space average) or direct")
        ->check(CLI::IsMember({"rho", "direct"}));

    std::string rc_which, rc_field, rc_known, rc_gamma, rc_out, rc_truth;
    auto *reconstruct = app.add_subcommand("reconstruct", "Recover phi or psi from W(phi, psi) or rho");
    reconstruct->add_option("--which", rc_which, "State to recover")->required()->check(CLI::IsMember({"phi", "psi"}));
    reconstruct->add_option("--field", rc_field, "cross_wigner or rho field file (json)")->required();
    reconstruct->add_option("--known", rc_known, "The other state of the pair")->required();
    reconstruct->add_option("--gamma", rc_gamma, "Auxiliary state (default: centred Gaussian)");
    reconstruct->add_option("--out", rc_out, "Output state file")->required();
    reconstruct->add_option("--truth", rc_truth, "Reference state for error reporting");

    std::string ld_psi;
    long ld_index = 0;
    auto *lundeen = app.add_subcommand("lundeen-demo", "Projector weak-value scan and pointwise reconstruction");
    lundeen->add_option("--psi", ld_psi, "Pre-selected state file")->required();
    lundeen->add_option("--p0-index", ld_index, "Momentum lattice index of the post-selection")->required();

    std::size_t vf_n = 256;
    double vf_dx = 0.1, vf_hbar = 1.0;
    std::uint64_t vf_seed = 42;
    std::string vf_out;
    auto *verify = app.add_subcommand("verify", "Run the identity verification suite");
    verify->add_option("--n", vf_n, "Grid size (power of two)");
    verify->add_option("--dx", vf_dx, "Grid spacing");
    verify->add_option("--hbar", vf_hbar, "Action scale");
    verify->add_option("--seed", vf_seed, "Random state seed");
    verify->add_option("--out", vf_out, "Report path (default: stdout)");

    std::string ms_kind = "gaussian", ms_out, ms_label;
    std::size_t ms_n = 256;
    double ms_dx = 0.1, ms_hbar = 1.0, ms_x0 = 0.0, ms_p0 = 0.0, ms_width = -1.0;
    int ms_order = 0;
    std::optional<long> ms_p0_index;
    auto *make = app.add_subcommand("make-state", "Write a reference state file");
    make->add_option("--kind", ms_kind, "gaussian | hermite | plane-wave")
        ->check(CLI::IsMember({"gaussian", "hermite", "plane-wave"}));
    make->add_option("--n", ms_n, "Grid size (power of two)");
    make->add_option("--dx", ms_dx, "Grid spacing");
    make->add_option("--hbar", ms_hbar, "Action scale");
    make->add_option("--x0", ms_x0, "Gaussian centre");
    make->add_option("--p0", ms_p0, "Gaussian mean momentum");
    make->add_option("--p0-index", ms_p0_index, "Momentum lattice index (plane wave, or Gaussian momentum)");
    make->add_option("--width", ms_width, "Gaussian width (default sqrt(hbar))");
    make->add_option("--order", ms_order, "Hermite order");
    make->add_option("--label", ms_label, "Free-text label");
    make->add_option("--out", ms_out, "Output state file")->required();

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return io_error;
    }

    try {
        auto field_command = [&](const FieldArgs &a, const char *quantity) {
            const auto phi = io::load_state(a.phi).state;
            const auto psi = io::load_state(a.psi).state;
            io::FieldFile file{PhaseSpaceField(phi.grid(), Lattice::wigner), quantity, std::nullopt};
            if (std::string(quantity) == "cross_wigner") {
                file.field = cross_wigner(phi, psi);
            } else if (std::string(quantity) == "cross_ambiguity") {
                file.field = cross_ambiguity(phi, psi);
            } else {
                file.field = quasi_distribution_rho(phi, psi);
                file.overlap = inner_product(phi, psi);
            }
            io::dump_field(file, a.out, resolve_format(a));
            return ok;
        };

        if (wigner->parsed())
            return field_command(wigner_args, "cross_wigner");
        if (ambiguity->parsed())
            return field_command(ambiguity_args, "cross_ambiguity");
        if (rho->parsed())
            return field_command(rho_args, "rho");

        if (weak->parsed()) {
            const auto phi = io::load_state(wv_phi).state;
            const auto psi = io::load_state(wv_psi).state;
            if (!(phi.grid() == psi.grid()))
                throw PreconditionError("phi and psi live on different grids");
            const ObservableSymbol symbol = parse_observable(wv_observable, phi.grid());
            const cplx value = wv_route == "direct"
                                   ? weak_value_direct(symbol, phi, psi)
                                   : weak_value_from_rho(symbol, quasi_distribution_rho(phi, psi));
            const WeakValueReport report = pointer_readout(value, wv_g, wv_v, phi.grid().hbar());
            json doc = io::weak_value_to_json(report, inner_product(phi, psi), phi.grid().hbar(), wv_observable);
            doc["route"] = wv_route;
            out << doc.dump(2) << "\n";
            return ok;
        }

        if (reconstruct->parsed()) {
            const io::FieldFile field = io::load_field(rc_field);
            const SampledState known = io::load_state(rc_known).state;
            const SampledState gamma = rc_gamma.empty() ? default_gamma(known.grid()) : io::load_state(rc_gamma).state;
            const Unknown which = rc_which == "phi" ? Unknown::phi : Unknown::psi;
            std::optional<Reconstruction> result;
            if (field.quantity == "rho") {
                if (!field.overlap)
                    throw ParseError(rc_field + ": rho field carries no 'overlap'");
                result = reconstruct_from_rho(field.field, known, gamma, *field.overlap, which);
            } else if (field.quantity == "cross_wigner") {
                result = which == Unknown::phi ? reconstruct_phi(field.field, known, gamma)
                                               : reconstruct_psi(field.field, known, gamma);
            } else {
                throw PreconditionError("reconstruct needs a cross_wigner or rho field, got \"" + field.quantity + "\"");
            }
            for (const auto &w : result->warnings)
                err << "warning: " << w << "\n";
            io::save_state(result->state, rc_out, "reconstructed " + rc_which);
            json doc = {{"which", rc_which}, {"warnings", result->warnings}};
            if (!rc_truth.empty())
                doc["error"] = io::reconstruction_error_to_json(
                    reconstruction_error(result->state, io::load_state(rc_truth).state));
            out << doc.dump(2) << "\n";
            return ok;
        }

        if (lundeen->parsed()) {
            const SampledState psi = io::load_state(ld_psi).state;
            const double p0 = momentum_at_index(psi.grid(), ld_index);
            const auto scan = projector_weak_value_scan(psi, p0);
            const auto closed = projector_weak_value_closed_form(psi, p0);
            double closed_residual = 0.0;
            for (std::size_t j = 0; j < scan.size(); ++j)
                closed_residual = std::max(closed_residual, std::abs(scan[j] - closed[j]));
            const cplx k = fourier_transform_at(psi, p0);
            const SampledState back = lundeen_reconstruct(scan, p0, k, psi.grid());
            const ReconstructionError e = reconstruction_error(back, psi);
            const json doc = {
                {"p0", p0},
                {"k", {{"re", k.real()}, {"im", k.imag()}}},
                {"scan_closed_form_residual", closed_residual},
                {"max_abs_error", e.max_abs},
                {"error", io::reconstruction_error_to_json(e)},
            };
            out << doc.dump(2) << "\n";
            return ok;
        }

        if (verify->parsed()) {
            const VerificationReport report = run_verification_suite(make_grid(vf_n, vf_dx, vf_hbar), vf_seed);
            const std::string text = io::report_to_json(report).dump(2) + "\n";
            if (vf_out.empty()) {
                out << text;
            } else {
                std::ofstream f(vf_out);
                if (!(f << text))
                    throw ParseError("cannot write " + vf_out);
            }
            std::size_t passed = 0;
            for (const Check &c : report.checks) {
                passed += c.pass ? 1 : 0;
                if (!c.pass)
                    err << "FAIL " << c.name << ": residual " << c.residual << " > " << c.tolerance
                        << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
            }
            err << passed << "/" << report.checks.size() << " checks passed\n";
            return report.all_pass() ? ok : verify_failed;
        }

        if (make->parsed()) {
            const Grid grid = make_grid(ms_n, ms_dx, ms_hbar);
            ReferenceKind kind;
            if (ms_kind == "gaussian") {
                const double p0 = ms_p0_index ? momentum_at_index(grid, *ms_p0_index) : ms_p0;
                kind = Gaussian{ms_x0, p0, ms_width > 0 ? ms_width : std::sqrt(ms_hbar)};
            } else if (ms_kind == "hermite") {
                kind = Hermite{ms_order};
            } else {
                kind = PlaneWave{ms_p0_index ? momentum_at_index(grid, *ms_p0_index) : ms_p0};
            }
            io::save_state(make_reference_state(kind, grid), ms_out, ms_label);
            return ok;
        }
    } catch (const OrthogonalityError &e) {
        err << "error: " << e.what() << "\n";
        return orthogonal;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return io_error;
    } catch (const PreconditionError &e) {
        err << "error: " << e.what() << "\n";
        return precondition;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return io_error;
    }
    return io_error;
}

} // namespace weft::cli
