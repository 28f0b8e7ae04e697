#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "weft/grid.hpp"

namespace weft {

using cplx = std::complex<double>;

/// Which lattice of the grid the samples live on.
enum class Basis { position, momentum };

/// Complex wavefunction samples on a Grid. Immutable after construction.
class SampledState {
  public:
    SampledState(Grid grid, std::vector<cplx> values, Basis basis = Basis::position);

    const Grid &grid() const { return grid_; }
    Basis basis() const { return basis_; }
    std::span<const cplx> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    const cplx &operator[](std::size_t j) const { return values_[j]; }

    /// Sample at lattice index j, zero outside [0, n).
    cplx at_or_zero(std::ptrdiff_t j) const {
        return (j >= 0 && static_cast<std::size_t>(j) < values_.size()) ? values_[j] : cplx{};
    }

    /// Lattice the samples are attached to (position or momentum).
    Axis axis() const;
    /// Quadrature weight of the lattice (dx or dp).
    double weight() const;
    double norm() const;

    SampledState conj() const;

    friend SampledState operator+(const SampledState &a, const SampledState &b);
    friend SampledState operator-(const SampledState &a, const SampledState &b);
    friend SampledState operator*(cplx c, const SampledState &s);

  private:
    Grid grid_;
    std::vector<cplx> values_;
    Basis basis_;
};

/// <phi|psi> = sum_j conj(phi_j) psi_j * weight.
cplx inner_product(const SampledState &phi, const SampledState &psi);

/// psi / ||psi||. Throws PreconditionError for the zero state.
SampledState normalize(const SampledState &psi);

enum class FourierDirection { forward, inverse };

/// Unitary hbar-Fourier transform
///   F psi(p) = (2 pi hbar)^{-1/2} \int e^{-i p x / hbar} psi(x) dx
/// between the position and momentum lattices of the grid. The input basis
/// must match the direction (position for forward, momentum for inverse).
SampledState hbar_fourier(const SampledState &psi,
                          FourierDirection direction = FourierDirection::forward);

/// Direct evaluation of F psi at arbitrary momenta (no FFT). psi must be in
/// the position basis.
std::vector<cplx> fourier_transform_at(const SampledState &psi, const Axis &momenta);
cplx fourier_transform_at(const SampledState &psi, double p);

/// Normalized Gaussian (pi w^2)^{-1/4} exp(-(x-x0)^2 / 2w^2) exp(i p0 x / hbar).
struct Gaussian {
    double x0 = 0.0;
    double p0 = 0.0;
    double width = 1.0;
};

/// k-th harmonic oscillator eigenfunction with length scale sqrt(hbar).
struct Hermite {
    int order = 0;
};

/// (2 pi hbar)^{-1/2} exp(i p0 x / hbar); p0 must be on the momentum lattice.
struct PlaneWave {
    double p0 = 0.0;
};

using ReferenceKind = std::variant<Gaussian, Hermite, PlaneWave>;

/// Gaussian and Hermite states are returned normalized on the grid; a plane
/// wave keeps its exact continuum prefactor.
SampledState make_reference_state(const ReferenceKind &kind, const Grid &grid);

/// Probability mass of psi outside the central half of the window,
/// relative to its total mass.
double mass_outside_central_half(const SampledState &psi);

} // namespace weft
