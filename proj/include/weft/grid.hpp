#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace weft {

/// Uniform 1-D lattice: value(i) = min + i * step, i in [0, size).
struct Axis {
    double min = 0.0;
    double step = 1.0;
    std::size_t size = 0;

    double at(std::size_t i) const { return min + static_cast<double>(i) * step; }
    double max() const { return at(size - 1); }

    friend bool operator==(const Axis &, const Axis &) = default;
};

/// Uniform position lattice with its FFT-conjugate momentum lattice.
///
/// The momentum lattice is centred at zero with spacing
/// dp = 2*pi*hbar / (n*dx), so that dx*dp*n = 2*pi*hbar.
class Grid {
  public:
    /// Throws PreconditionError unless n is a power of two >= 8 and
    /// dx, hbar are positive and finite.
    Grid(std::size_t n, double dx, double x_min, double hbar);

    std::size_t size() const { return n_; }
    double dx() const { return dx_; }
    double x_min() const { return x_min_; }
    double hbar() const { return hbar_; }
    double x(std::size_t j) const { return x_min_ + static_cast<double>(j) * dx_; }

    double dp() const { return dp_; }
    double p_min() const { return -static_cast<double>(n_ / 2) * dp_; }
    double p(std::size_t k) const { return p_min() + static_cast<double>(k) * dp_; }

    Axis position_axis() const { return {x_min_, dx_, n_}; }
    Axis momentum_axis() const { return {p_min(), dp_, n_}; }

    /// Index of x on the position lattice, or -1 if x is not a lattice point.
    std::ptrdiff_t position_index(double x) const;
    /// Index of p on the momentum lattice, or -1 if p is not a lattice point.
    std::ptrdiff_t momentum_index(double p) const;

    friend bool operator==(const Grid &a, const Grid &b) {
        return a.n_ == b.n_ && a.dx_ == b.dx_ && a.x_min_ == b.x_min_ && a.hbar_ == b.hbar_;
    }

  private:
    std::size_t n_;
    double dx_;
    double x_min_;
    double hbar_;
    double dp_;
};

/// Grid symmetric about the origin: x_min = -(n/2)*dx.
Grid make_grid(std::size_t n, double dx, double hbar = 1.0);

constexpr double two_pi = 2.0 * std::numbers::pi;

} // namespace weft
