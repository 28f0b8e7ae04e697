// Acceptance suite: one PASS/FAIL line per criterion on the default rig
// (n=256, dx=0.1, hbar=1, seed 42). Exit status is non-zero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "weft/cli.hpp"
#include "weft/errors.hpp"
#include "weft/io.hpp"
#include "weft/reconstruction.hpp"
#include "weft/verification.hpp"
#include "weft/weak_values.hpp"

using namespace weft;

namespace {

const Grid rig = make_grid(256, 0.1, 1.0);
constexpr std::uint64_t seed = 42;
constexpr double time_budget_s = 10.0;

struct Part {
    std::string what;
    double residual;
    double tolerance;
};

struct Outcome {
    std::vector<Part> parts;
    std::string note;

    void add(std::string what, double residual, double tolerance) {
        parts.push_back({std::move(what), residual, tolerance});
    }
};

double max_abs(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

SampledState ground() { return make_reference_state(Hermite{0}, rig); }

Outcome moyal() {
    Outcome o;
    const auto w = cross_wigner(ground(), ground());
    double s = 0.0;
    for (cplx v : w.values())
        s += std::norm(v) * w.cell_measure();
    o.add("sum |W(psi0)|^2 vs 1/(2 pi), relative", std::abs(s - 1 / (2 * M_PI)) * 2 * M_PI, 1e-6);
    RandomStateSource src(rig, seed);
    double m = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto a = src.next(), b = src.next(), c = src.next(), d = src.next();
        m = std::max(m, moyal_check(a, b, c, d));
    }
    o.add("10 random quadruples", m, 1e-6);
    return o;
}

Outcome gr_kernel() {
    Outcome o;
    RandomStateSource src(rig, seed);
    const auto [phi, psi] = src.next_pair();
    const auto w = cross_wigner(phi, psi);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> idx(0, rig.size() - 1);
    double m = 0.0;
    for (int i = 0; i < 32; ++i) {
        const std::size_t j = idx(rng), k = idx(rng);
        m = std::max(m, std::abs(w(j, k) - cross_wigner_via_gr(phi, psi, {w.x_axis().at(j), w.p_axis().at(k)})));
    }
    o.add("32 random lattice points", m, 1e-8);
    return o;
}

Outcome marginal_conditions() {
    Outcome o;
    RandomStateSource src(rig, seed);
    double mx = 0.0, mp = 0.0, tot = 0.0, im = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto [phi, psi] = src.next_pair();
        const auto rho = quasi_distribution_rho(phi, psi);
        const auto m = marginals(rho, phi, psi);
        mx = std::max(mx, m.x_residual);
        mp = std::max(mp, m.p_residual);
        const cplx t = rho.integral();
        tot = std::max(tot, std::abs(t - 1.0));
        im = std::max(im, std::abs(t.imag()));
    }
    o.add("x-marginal, 20 pairs", mx, 1e-6);
    o.add("p-marginal, 20 pairs", mp, 1e-6);
    o.add("sum rho = 1", tot, 1e-6);
    o.add("sum Im rho = 0", im, 1e-6);
    return o;
}

Outcome interference() {
    Outcome o;
    o.add("(psi0, hermite1)", interference_check(ground(), make_reference_state(Hermite{1}, rig)), 1e-8);
    RandomStateSource src(rig, seed);
    double m = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto a = src.next(), b = src.next();
        m = std::max(m, interference_check(a, b));
    }
    o.add("10 random pairs", m, 1e-8);
    return o;
}

Outcome reconstruction() {
    Outcome o;
    RandomStateSource src(rig, seed);
    const SampledState gammas[] = {default_gamma(rig), make_reference_state(Gaussian{0.5, -0.4, 0.8}, rig),
                                   make_reference_state(Gaussian{-0.7, 0.9, 1.3}, rig)};
    double rt = 0.0, gi = 0.0;
    for (int i = 0; i < 5; ++i) {
        const auto [phi, psi] = src.next_pair();
        const auto W = cross_wigner(phi, psi);
        std::vector<SampledState> recs;
        for (const auto &g : gammas) {
            recs.push_back(reconstruct_phi(W, psi, g).state);
            rt = std::max(rt, reconstruction_error(recs.back(), phi).max_abs);
            rt = std::max(rt, reconstruction_error(reconstruct_psi(W, phi, g).state, psi).max_abs);
        }
        for (std::size_t g = 1; g < recs.size(); ++g)
            gi = std::max(gi, max_abs(recs[0].values(), recs[g].values()));
    }
    o.add("round trip phi and psi, 5 pairs x 3 gammas", rt, 1e-4);
    o.add("gamma independence", gi, 1e-5);

    const auto [phi, psi0] = src.next_pair();
    const SampledState psi = std::polar(1.0, M_PI / 3) * psi0;
    const auto rec = reconstruct_psi(cross_wigner(phi, psi), phi, default_gamma(rig)).state;
    o.add("global phase e^{i pi/3}, max_abs", reconstruction_error(rec, psi).max_abs, 1e-4);
    return o;
}

Outcome lundeen() {
    Outcome o;
    const double p0 = 2 * rig.dp();
    const SampledState states[] = {ground(), make_reference_state(Gaussian{1.0, p0, 1.0}, rig)};
    const double p0s[] = {0.0, p0};
    double closed = 0.0, rt = 0.0;
    for (int i = 0; i < 2; ++i) {
        const auto scan = projector_weak_value_scan(states[i], p0s[i]);
        closed = std::max(closed, max_abs(scan, projector_weak_value_closed_form(states[i], p0s[i])));
        const auto back = lundeen_reconstruct(scan, p0s[i], fourier_transform_at(states[i], p0s[i]), rig);
        rt = std::max(rt, reconstruction_error(back, states[i]).max_abs);
    }
    o.add("scan vs closed form", closed, 1e-6);
    o.add("round trip (Gaussian, displaced Gaussian)", rt, 1e-7);
    return o;
}

Outcome roo_shape() {
    Outcome o;
    RandomStateSource src(rig, seed);
    const auto psi = src.next();
    const auto fpsi = hbar_fourier(psi);
    std::size_t kmax = 0;
    for (std::size_t k = 0; k < rig.size(); ++k)
        if (std::abs(fpsi[k]) > std::abs(fpsi[kmax])) kmax = k;
    const double p0 = rig.p(kmax);
    const auto rho = quasi_distribution_rho(make_reference_state(PlaneWave{p0}, rig), psi);

    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(rig.size());
    double peak = 0.0;
    for (cplx v : psi.values()) peak = std::max(peak, std::abs(v));
    std::vector<std::size_t> rows;
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        double lost = 0.0;
        for (std::ptrdiff_t b = 0; b < n; ++b)
            if (2 * j - b < 0 || 2 * j - b >= n) lost = std::max(lost, std::abs(psi[b]));
        if (lost <= 1e-12 * peak) rows.push_back(static_cast<std::size_t>(j));
    }
    if (rows.empty()) {
        o.add("no covered rows", INFINITY, 1e-6);
        return o;
    }
    auto stripped = [&](std::size_t j, std::size_t k) {
        return rho(j, k) * std::polar(1.0, -2.0 * (rho.p_axis().at(k) - p0) * rho.x_axis().at(j));
    };
    const std::size_t ref = rows[rows.size() / 2];
    double m = 0.0;
    for (std::size_t j : rows)
        for (std::size_t k = 0; k < rho.cols(); ++k) m = std::max(m, std::abs(stripped(j, k) - stripped(ref, k)));
    o.add("x-independence over " + std::to_string(rows.size()) + " covered rows", m, 1e-6);
    o.note = "rows whose reflection window does not cover psi are excluded";
    return o;
}

Outcome ambiguity() {
    Outcome o;
    RandomStateSource src(rig, seed);
    const auto [phi, psi] = src.next_pair();
    const auto W = cross_wigner(phi, psi);
    const auto A = cross_ambiguity(phi, psi);
    const auto FW = symplectic_fourier(W);
    o.add("A vs F_sigma W", max_abs_difference(A, FW), 1e-6);
    o.add("F_sigma involution", max_abs_difference(symplectic_fourier(FW), W), 1e-10);
    const auto rho = quasi_distribution_rho(phi, psi);
    const auto viaA = (1.0 / inner_product(phi, psi)) * symplectic_fourier(A);
    o.add("rho = F_sigma A / <phi|psi>", max_abs_difference(viaA, rho), 1e-6);
    return o;
}

Outcome oracles() {
    Outcome o;
    RandomStateSource src(rig, seed);
    double mx = 0.0, mp = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto [phi, psi] = src.next_pair();
        const auto rho = quasi_distribution_rho(phi, psi);
        mx = std::max(mx, std::abs(weak_value_from_rho(observable::CoordinateX{}, rho) -
                                   weak_value_direct(observable::CoordinateX{}, phi, psi)));
        mp = std::max(mp, std::abs(weak_value_from_rho(observable::CoordinateP{}, rho) -
                                   weak_value_direct(observable::CoordinateP{}, phi, psi)));
    }
    o.add("x weak value, 20 pairs", mx, 1e-6);
    o.add("p weak value, 20 pairs", mp, 1e-6);

    const auto [phi, psi] = src.next_pair();
    const auto W = cross_wigner(phi, psi);
    std::mt19937_64 rng(seed);
    // points where the states live; far tails are numerically zero on both routes
    std::uniform_int_distribution<std::size_t> jx(88, 168), kp(64, 192);
    double bf = 0.0;
    for (int i = 0; i < 16; ++i) {
        const std::size_t j = jx(rng), k = kp(rng);
        bf = std::max(bf, std::abs(brute_force_cross_wigner(phi, psi, {W.x_axis().at(j), W.p_axis().at(k)}) - W(j, k)));
    }
    o.add("brute force vs FFT, 16 points", bf, 1e-6);
    return o;
}

Outcome cli_io() {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "weft_acceptance";
    fs::create_directories(dir);
    std::ostringstream out, err;
    auto run = [&](std::vector<std::string> args) {
        args.insert(args.begin(), "wigner-weft");
        out.str({});
        err.str({});
        return cli::run_command(args, out, err);
    };
    o.add("verify exit code on default rig", run({"verify", "--out", (dir / "report.json").string()}), 0.0);

    RandomStateSource src(rig, seed);
    const auto [phi, psi] = src.next_pair();
    io::save_state(phi, dir / "phi.json", "phi");
    const auto back = io::load_state(dir / "phi.json").state;
    double bits = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j)
        bits += (back[j] == phi[j]) ? 0.0 : 1.0;
    const auto rho = quasi_distribution_rho(phi, psi);
    io::dump_field({rho, "rho", inner_product(phi, psi)}, dir / "rho.json", io::FieldFormat::json);
    const auto fb = io::load_field(dir / "rho.json");
    for (std::size_t i = 0; i < rho.values().size(); ++i)
        bits += (fb.field.values()[i] == rho.values()[i]) ? 0.0 : 1.0;
    o.add("serialization mismatches (state + field)", bits, 0.0);

    io::save_state(make_reference_state(Hermite{0}, rig), dir / "g0.json");
    io::save_state(make_reference_state(Hermite{1}, rig), dir / "h1.json");
    io::save_state(make_reference_state(Hermite{0}, make_grid(128, 0.1)), dir / "other.json");
    std::ofstream(dir / "bad.json") << "{\"schema_version\": \"1\", \"grid\": 3}";
    const std::string g0 = (dir / "g0.json").string(), h1 = (dir / "h1.json").string();
    struct Case {
        std::vector<std::string> args;
        int expect;
    };
    const std::vector<Case> cases{
        {{"weak-value", "--phi", g0}, cli::io_error},
        {{"weak-value", "--phi", (dir / "bad.json").string(), "--psi", g0, "--observable", "x"}, cli::io_error},
        {{"weak-value", "--phi", g0, "--psi", (dir / "other.json").string(), "--observable", "x"}, cli::precondition},
        {{"lundeen-demo", "--psi", g0, "--p0-index", "999"}, cli::precondition},
        {{"weak-value", "--phi", h1, "--psi", g0, "--observable", "x"}, cli::orthogonal},
        {{"verify", "--n", "16", "--dx", "0.5", "--out", (dir / "coarse.json").string()}, cli::verify_failed},
    };
    double wrong = 0.0;
    for (const auto &c : cases)
        wrong += run(c.args) == c.expect ? 0.0 : 1.0;
    o.add("exit-code taxonomy mismatches (" + std::to_string(cases.size()) + " cases)", wrong, 0.0);
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Moyal identity", moyal},
        {"GR-kernel identity", gr_kernel},
        {"marginals and normalization", marginal_conditions},
        {"interference decomposition", interference},
        {"reconstruction round trip", reconstruction},
        {"projector scan route", lundeen},
        {"rho shape for momentum post-selection", roo_shape},
        {"ambiguity equivalence", ambiguity},
        {"oracle agreement", oracles},
        {"CLI and serialization", cli_io},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        std::string error;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = error.empty() && secs < time_budget_s;
        std::string detail;
        for (const auto &p : o.parts) {
            const bool ok = p.residual <= p.tolerance;
            pass = pass && ok;
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s%s=%.3g (tol %.0e)%s", detail.empty() ? "" : "; ", p.what.c_str(),
                          p.residual, p.tolerance, ok ? "" : " FAILED");
            detail += buf;
        }
        if (!error.empty())
            detail += "exception: " + error;
        if (!o.note.empty())
            detail += " [" + o.note + "]";
        std::printf("%s criterion %zu: %s: %s (%.2fs)\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    detail.c_str(), secs);
        std::fflush(stdout);
        failures += pass ? 0 : 1;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
