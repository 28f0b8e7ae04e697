#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "weft/phase_space.hpp"
#include "weft/state.hpp"

namespace weft {

/// Direct quadrature of the cross-Wigner integral at a single point, no FFT.
/// The correlation variable is sampled with step 2*dx/oversample and state
/// values between lattice points come from band-limited (sinc)
/// interpolation of the samples.
cplx brute_force_cross_wigner(const SampledState &phi, const SampledState &psi, PhasePoint z,
                              int oversample = 4);

/// |sum conj(W(phi,psi)) W(phi2,psi2) dx dp - (2 pi hbar)^{-1} <phi2|phi><psi|psi2>|
double moyal_check(const SampledState &phi, const SampledState &psi, const SampledState &phi2,
                   const SampledState &psi2);

/// max |W(phi+psi) - W(phi) - W(psi) - 2 Re W(phi,psi)| over the lattice.
double interference_check(const SampledState &phi, const SampledState &psi);

/// Seeded generator of normalized superpositions of displaced Gaussians,
/// placed well inside the window. Lengths scale with sqrt(hbar).
class RandomStateSource {
  public:
    RandomStateSource(const Grid &grid, std::uint64_t seed);

    SampledState next();
    /// Next pair with |<phi|psi>| > min_overlap.
    std::pair<SampledState, SampledState> next_pair(double min_overlap = 0.1);

  private:
    Grid grid_;
    std::mt19937_64 engine_;
};

struct Check {
    std::string name;
    double residual;
    double tolerance;
    bool pass;
    std::string note;
};

struct VerificationReport {
    std::size_t n;
    double dx;
    double hbar;
    std::uint64_t seed;
    std::vector<Check> checks;
    std::map<std::string, std::string> conventions;

    bool all_pass() const;
    const Check *find(const std::string &name) const;
};

struct SuiteTolerances {
    double algebraic = 1e-10;
    double quadrature = 1e-6;
    double gr_kernel = 1e-8;
    double reconstruction = 1e-4;
    double gamma_independence = 1e-5;
};

/// Runs every identity check in a fixed order and records residuals.
/// Failures are recorded, never thrown.
VerificationReport run_verification_suite(const Grid &grid, std::uint64_t seed = 42,
                                          const SuiteTolerances &tolerances = {});

} // namespace weft
