#include "weft/phase_space.hpp"

#include <cmath>
#include <string>

#include "weft/detail/lattice_dft.hpp"
#include "weft/detail/parallel.hpp"
#include "weft/errors.hpp"

namespace weft {

namespace {

void require_position_pair(const SampledState &phi, const SampledState &psi, const char *op) {
    if (!(phi.grid() == psi.grid()))
        throw PreconditionError(std::string(op) + ": states live on different grids");
    if (phi.basis() != Basis::position || psi.basis() != Basis::position)
        throw PreconditionError(std::string(op) + ": states must be in the position basis");
}

// Correlation variable y_m = 2 m dx, m in [-n/2, n/2).
Axis doubled_lag_axis(const Grid &g) {
    return {-static_cast<double>(g.size()) * g.dx(), 2.0 * g.dx(), g.size()};
}

std::size_t require_lattice_x(const Grid &g, double x, const char *op) {
    const auto j = g.position_index(x);
    if (j < 0)
        throw PreconditionError(std::string(op) + ": x0 = " + std::to_string(x) +
                                " is not a point of the position lattice");
    return static_cast<std::size_t>(j);
}

} // namespace

Axis wigner_momentum_axis(const Grid &g) {
    const double step = std::numbers::pi * g.hbar() / (static_cast<double>(g.size()) * g.dx());
    return {-static_cast<double>(g.size() / 2) * step, step, g.size()};
}

Axis ambiguity_lag_axis(const Grid &g) {
    return {-static_cast<double>(g.size() / 2) * 2.0 * g.dx(), 2.0 * g.dx(), g.size()};
}

PhaseSpaceField::PhaseSpaceField(Grid grid, Lattice lattice, std::vector<cplx> values)
    : grid_(grid), lattice_(lattice), values_(std::move(values)) {
    if (lattice_ == Lattice::wigner) {
        x_axis_ = grid_.position_axis();
        p_axis_ = wigner_momentum_axis(grid_);
    } else {
        x_axis_ = ambiguity_lag_axis(grid_);
        p_axis_ = grid_.momentum_axis();
    }
    if (values_.size() != x_axis_.size * p_axis_.size)
        throw PreconditionError("phase-space field has " + std::to_string(values_.size()) +
                                " values, expected " + std::to_string(x_axis_.size * p_axis_.size));
    for (const cplx &v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw PreconditionError("phase-space field values must be finite");
}

PhaseSpaceField::PhaseSpaceField(Grid grid, Lattice lattice)
    : PhaseSpaceField(grid, lattice, std::vector<cplx>(grid.size() * grid.size())) {}

PhaseSpaceField PhaseSpaceField::conj() const {
    std::vector<cplx> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::conj(values_[i]);
    return {grid_, lattice_, std::move(out)};
}

cplx PhaseSpaceField::integral() const {
    cplx s{};
    for (const cplx &v : values_)
        s += v;
    return s * cell_measure();
}

namespace {

void require_compatible(const PhaseSpaceField &a, const PhaseSpaceField &b, const char *op) {
    if (!(a.grid() == b.grid()) || a.lattice() != b.lattice())
        throw PreconditionError(std::string(op) + ": fields live on different lattices");
}

} // namespace

PhaseSpaceField operator+(const PhaseSpaceField &a, const PhaseSpaceField &b) {
    require_compatible(a, b, "field addition");
    std::vector<cplx> out(a.values_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a.values_[i] + b.values_[i];
    return {a.grid_, a.lattice_, std::move(out)};
}

PhaseSpaceField operator-(const PhaseSpaceField &a, const PhaseSpaceField &b) {
    require_compatible(a, b, "field subtraction");
    std::vector<cplx> out(a.values_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a.values_[i] - b.values_[i];
    return {a.grid_, a.lattice_, std::move(out)};
}

PhaseSpaceField operator*(cplx c, const PhaseSpaceField &f) {
    std::vector<cplx> out(f.values_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = c * f.values_[i];
    return {f.grid_, f.lattice_, std::move(out)};
}

double max_abs_difference(const PhaseSpaceField &a, const PhaseSpaceField &b) {
    require_compatible(a, b, "max_abs_difference");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

PhaseSpaceField cross_wigner(const SampledState &phi, const SampledState &psi) {
    require_position_pair(phi, psi, "cross_wigner");
    const Grid &g = phi.grid();
    const std::size_t n = g.size();
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    const Axis lag = doubled_lag_axis(g);
    const Axis momenta = wigner_momentum_axis(g);
    // dy / (2 pi hbar) with dy = 2 dx
    const double scale = g.dx() / (std::numbers::pi * g.hbar());

    std::vector<cplx> values(n * n);
    detail::parallel_for(n, [&](std::size_t j) {
        const auto jj = static_cast<std::ptrdiff_t>(j);
        std::vector<cplx> corr(n);
        for (std::ptrdiff_t m = -half; m < half; ++m)
            corr[m + half] = std::conj(phi.at_or_zero(jj - m)) * psi.at_or_zero(jj + m);
        const auto row = detail::lattice_dft(corr, lag, momenta, -1, g.hbar());
        for (std::size_t k = 0; k < n; ++k)
            values[j * n + k] = scale * row[k];
    });
    return {g, Lattice::wigner, std::move(values)};
}

SampledState grossmann_royer_apply(PhasePoint z0, const SampledState &psi) {
    if (psi.basis() != Basis::position)
        throw PreconditionError("grossmann_royer_apply: state must be in the position basis");
    if (!std::isfinite(z0.p))
        throw PreconditionError("grossmann_royer_apply: p0 must be finite");
    const Grid &g = psi.grid();
    const auto j0 = static_cast<std::ptrdiff_t>(require_lattice_x(g, z0.x, "grossmann_royer_apply"));
    // Use the exact lattice value of x0 for the phase.
    const double x0 = g.x(static_cast<std::size_t>(j0));
    std::vector<cplx> out(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const cplx reflected = psi.at_or_zero(2 * j0 - static_cast<std::ptrdiff_t>(j));
        if (reflected != cplx{})
            out[j] = std::polar(1.0, 2.0 * z0.p * (g.x(j) - x0) / g.hbar()) * reflected;
    }
    return {g, std::move(out)};
}

cplx cross_wigner_via_gr(const SampledState &phi, const SampledState &psi, PhasePoint z) {
    require_position_pair(phi, psi, "cross_wigner_via_gr");
    const SampledState reflected = grossmann_royer_apply(z, phi);
    return inner_product(reflected, psi) / (std::numbers::pi * phi.grid().hbar());
}

PhaseSpaceField symplectic_fourier(const PhaseSpaceField &field) {
    const Grid &g = field.grid();
    const std::size_t n = g.size();
    const Lattice target = field.lattice() == Lattice::wigner ? Lattice::ambiguity : Lattice::wigner;
    PhaseSpaceField shape(g, target);
    const Axis &x_in = field.x_axis();
    const Axis &p_in = field.p_axis();
    const Axis &x_out = shape.x_axis();
    const Axis &p_out = shape.p_axis();

    // Kernel exp(-i (p x' - x p') / hbar): transform p' -> x with sign +,
    // then x' -> p with sign -.
    std::vector<cplx> stage(n * n);
    detail::parallel_for(n, [&](std::size_t j) {
        const auto row = detail::lattice_dft(field.row(j), p_in, x_out, +1, g.hbar());
        std::copy(row.begin(), row.end(), stage.begin() + static_cast<std::ptrdiff_t>(j * n));
    });

    const double scale = field.cell_measure() / (two_pi * g.hbar());
    std::vector<cplx> out(n * n);
    detail::parallel_for(n, [&](std::size_t a) {
        std::vector<cplx> column(n);
        for (std::size_t j = 0; j < n; ++j)
            column[j] = stage[j * n + a];
        const auto col = detail::lattice_dft(column, x_in, p_out, -1, g.hbar());
        for (std::size_t b = 0; b < n; ++b)
            out[a * n + b] = scale * col[b];
    });
    return {g, target, std::move(out)};
}

PhaseSpaceField cross_ambiguity(const SampledState &phi, const SampledState &psi) {
    require_position_pair(phi, psi, "cross_ambiguity");
    const Grid &g = phi.grid();
    const std::size_t n = g.size();
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    const double scale = g.dx() / (two_pi * g.hbar());

    std::vector<cplx> values(n * n);
    detail::parallel_for(n, [&](std::size_t a) {
        // lag x_a = 2 m dx, so y -/+ x_a / 2 are the lattice points j -/+ m
        const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(a) - half;
        std::vector<cplx> corr(n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto jj = static_cast<std::ptrdiff_t>(j);
            corr[j] = std::conj(phi.at_or_zero(jj - m)) * psi.at_or_zero(jj + m);
        }
        const auto row = detail::lattice_dft(corr, g.position_axis(), g.momentum_axis(), -1, g.hbar());
        for (std::size_t k = 0; k < n; ++k)
            values[a * n + k] = scale * row[k];
    });
    return {g, Lattice::ambiguity, std::move(values)};
}

} // namespace weft
