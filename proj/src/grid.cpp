#include "weft/grid.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "weft/errors.hpp"

namespace weft {

namespace {

std::ptrdiff_t lattice_index(double value, double min, double step, std::size_t n) {
    const double t = (value - min) / step;
    const double r = std::round(t);
    if (!std::isfinite(t) || std::abs(t - r) > 1e-9 * std::max(1.0, std::abs(t)))
        return -1;
    if (r < 0 || r >= static_cast<double>(n))
        return -1;
    return static_cast<std::ptrdiff_t>(r);
}

} // namespace

Grid::Grid(std::size_t n, double dx, double x_min, double hbar)
    : n_(n), dx_(dx), x_min_(x_min), hbar_(hbar) {
    if (n < 8 || !std::has_single_bit(n))
        throw PreconditionError("grid size must be a power of two >= 8, got " + std::to_string(n));
    if (!(dx > 0.0) || !std::isfinite(dx))
        throw PreconditionError("grid spacing dx must be positive and finite");
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw PreconditionError("hbar must be positive and finite");
    if (!std::isfinite(x_min))
        throw PreconditionError("x_min must be finite");
    dp_ = two_pi * hbar_ / (static_cast<double>(n_) * dx_);
}

std::ptrdiff_t Grid::position_index(double x) const { return lattice_index(x, x_min_, dx_, n_); }

std::ptrdiff_t Grid::momentum_index(double p) const { return lattice_index(p, p_min(), dp_, n_); }

Grid make_grid(std::size_t n, double dx, double hbar) {
    return Grid(n, dx, -static_cast<double>(n / 2) * dx, hbar);
}

} // namespace weft
