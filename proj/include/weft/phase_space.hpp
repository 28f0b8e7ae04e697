#pragma once

#include <span>
#include <vector>

#include "weft/grid.hpp"
#include "weft/state.hpp"

namespace weft {

/// Phase-space point z = (x, p).
struct PhasePoint {
    double x = 0.0;
    double p = 0.0;
};

/// The two dual lattices a PhaseSpaceField can live on.
///
/// wigner:    x on the grid's position lattice (step dx); p centred with
///            step pi*hbar/(n*dx). The correlation variable is sampled at
///            2*dx, which makes the discrete transform periodic in p with
///            period pi*hbar/dx, i.e. exactly this n-point window.
/// ambiguity: lag x centred with step 2*dx; p on the grid's momentum
///            lattice (step dp).
///
/// The symplectic Fourier transform maps each lattice onto the other.
enum class Lattice { wigner, ambiguity };

Axis wigner_momentum_axis(const Grid &grid);
Axis ambiguity_lag_axis(const Grid &grid);

/// Complex n x n array over an (x, p) lattice, row-major (x outer, p inner).
class PhaseSpaceField {
  public:
    PhaseSpaceField(Grid grid, Lattice lattice, std::vector<cplx> values);
    /// Zero field.
    PhaseSpaceField(Grid grid, Lattice lattice);

    const Grid &grid() const { return grid_; }
    Lattice lattice() const { return lattice_; }
    const Axis &x_axis() const { return x_axis_; }
    const Axis &p_axis() const { return p_axis_; }
    std::size_t rows() const { return x_axis_.size; }
    std::size_t cols() const { return p_axis_.size; }
    double cell_measure() const { return x_axis_.step * p_axis_.step; }

    const cplx &operator()(std::size_t j, std::size_t k) const { return values_[j * cols() + k]; }
    std::span<const cplx> values() const { return values_; }
    std::span<const cplx> row(std::size_t j) const {
        return std::span<const cplx>(values_).subspan(j * cols(), cols());
    }

    PhaseSpaceField conj() const;
    /// Sum of values times the cell measure.
    cplx integral() const;

    friend PhaseSpaceField operator+(const PhaseSpaceField &a, const PhaseSpaceField &b);
    friend PhaseSpaceField operator-(const PhaseSpaceField &a, const PhaseSpaceField &b);
    friend PhaseSpaceField operator*(cplx c, const PhaseSpaceField &f);

  private:
    Grid grid_;
    Lattice lattice_;
    Axis x_axis_;
    Axis p_axis_;
    std::vector<cplx> values_;
};

/// max |a - b| over the lattice; fields must share grid and lattice.
double max_abs_difference(const PhaseSpaceField &a, const PhaseSpaceField &b);

/// Cross-Wigner transform
///   W(phi,psi)(x,p) = (2 pi hbar)^{-1} \int e^{-i p y/hbar}
///                     conj(phi(x - y/2)) psi(x + y/2) dy
/// on the wigner lattice. With this orientation the diagonal W(psi,psi) is
/// the usual Wigner distribution, its marginals are |psi(x)|^2 and
/// |F psi(p)|^2, and W(phi,psi)(z) = (pi hbar)^{-1} <T_GR(z) phi|psi>.
/// W(psi,phi) = conj(W(phi,psi)) pointwise.
PhaseSpaceField cross_wigner(const SampledState &phi, const SampledState &psi);

/// Grossmann-Royer reflection
///   T_GR(z0) psi(x) = exp(2i p0 (x - x0)/hbar) psi(2 x0 - x),
/// zero where 2 x0 - x leaves the window. x0 must be a position lattice point.
SampledState grossmann_royer_apply(PhasePoint z0, const SampledState &psi);

/// (pi hbar)^{-1} <T_GR(z) phi | psi>. z.x must be a position lattice point;
/// z.p is arbitrary.
cplx cross_wigner_via_gr(const SampledState &phi, const SampledState &psi, PhasePoint z);

/// F_sigma a(x,p) = (2 pi hbar)^{-1} \int e^{-i (p x' - x p')/hbar} a(x',p') dx' dp'.
/// Maps a wigner-lattice field to the ambiguity lattice and back; it is an
/// involution.
PhaseSpaceField symplectic_fourier(const PhaseSpaceField &field);

/// Cross-ambiguity function
///   A(phi,psi)(x,p) = (2 pi hbar)^{-1} \int e^{-i p y/hbar}
///                     conj(phi(y - x/2)) psi(y + x/2) dy
/// evaluated directly on the ambiguity lattice. Equals
/// symplectic_fourier(cross_wigner(phi, psi)).
PhaseSpaceField cross_ambiguity(const SampledState &phi, const SampledState &psi);

} // namespace weft
