#pragma once

#include <variant>
#include <vector>

#include "weft/phase_space.hpp"
#include "weft/state.hpp"

namespace weft {

inline constexpr double default_overlap_tolerance = 1e-10;

/// Weak value together with the von Neumann pointer readouts.
struct WeakValueReport {
    cplx value;
    double pointer_x_mean; ///< g * Re(value)
    double pointer_p_mean; ///< (2 g v / hbar) * Im(value)
    double g;
    double v;
};

namespace observable {
struct CoordinateX {};
struct CoordinateP {};
/// Symbol sampled on a phase-space lattice, row-major like PhaseSpaceField.
struct Gridded {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> values;
};
/// |x_j><x_j| for the position lattice point x_j.
struct PositionProjector {
    std::size_t index = 0;
};
} // namespace observable

using ObservableSymbol = std::variant<observable::CoordinateX, observable::CoordinateP,
                                      observable::Gridded, observable::PositionProjector>;

/// rho(phi,psi) = W(phi,psi) / <phi|psi>.
/// Throws OrthogonalityError when |<phi|psi>| <= overlap_tolerance.
PhaseSpaceField quasi_distribution_rho(const SampledState &phi, const SampledState &psi,
                                       double overlap_tolerance = default_overlap_tolerance);

/// Phase-space average sum A(x,p) rho(x,p) dx dp. Position projectors are
/// evaluated through the p-integral of rho at fixed x.
cplx weak_value_from_rho(const ObservableSymbol &symbol, const PhaseSpaceField &rho);

/// <phi|A|psi> / <phi|psi> by direct operator application. Supports x, p
/// (Fourier multiplication) and position projectors.
cplx weak_value_direct(const ObservableSymbol &symbol, const SampledState &phi,
                       const SampledState &psi,
                       double overlap_tolerance = default_overlap_tolerance);

struct Marginals {
    std::vector<cplx> x_marginal; ///< on rho.x_axis()
    std::vector<cplx> p_marginal; ///< on rho.p_axis()
    double x_residual;            ///< max |x_marginal - conj(phi) psi / <phi|psi>|
    double p_residual;            ///< max |p_marginal - conj(F phi) F psi / <phi|psi>|
};

Marginals marginals(const PhaseSpaceField &rho, const SampledState &phi, const SampledState &psi);

/// Weak values of the position projectors for post-selection on the
/// momentum eigenstate phi_{p0}, one per position lattice point, computed
/// by integrating rho(phi_{p0}, psi) over p. Equals
///   (2 pi hbar)^{-1/2} exp(-i p0 x / hbar) psi(x) / F psi(p0).
/// Throws PreconditionError if p0 is off the momentum lattice and
/// OrthogonalityError when |F psi(p0)| <= overlap_tolerance.
std::vector<cplx> projector_weak_value_scan(const SampledState &psi, double p0,
                                            double overlap_tolerance = default_overlap_tolerance);

/// Closed form of the projector scan, for comparison.
std::vector<cplx> projector_weak_value_closed_form(const SampledState &psi, double p0);

/// Inverts the projector scan: psi(x) = k (2 pi hbar)^{1/2} exp(i p0 x / hbar) scan(x)
/// with k = F psi(p0).
SampledState lundeen_reconstruct(std::span<const cplx> scan, double p0, cplx k, const Grid &grid);

WeakValueReport pointer_readout(cplx value, double g, double v, double hbar);

} // namespace weft
