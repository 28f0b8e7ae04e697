#include "weft/weak_values.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "weft/errors.hpp"

namespace weft {

namespace {

cplx checked_overlap(const SampledState &phi, const SampledState &psi, double tolerance) {
    const cplx overlap = inner_product(phi, psi);
    if (!(std::abs(overlap) > tolerance)) {
        std::ostringstream msg;
        msg << "states are numerically orthogonal: |<phi|psi>| = " << std::abs(overlap)
            << " <= tolerance " << tolerance;
        throw OrthogonalityError(msg.str(), std::abs(overlap));
    }
    return overlap;
}

// Sum over p of rho at fixed row j, times dp.
cplx row_integral(const PhaseSpaceField &rho, std::size_t j) {
    cplx s{};
    for (const cplx &v : rho.row(j))
        s += v;
    return s * rho.p_axis().step;
}

} // namespace

PhaseSpaceField quasi_distribution_rho(const SampledState &phi, const SampledState &psi,
                                       double overlap_tolerance) {
    const cplx overlap = checked_overlap(phi, psi, overlap_tolerance);
    return (1.0 / overlap) * cross_wigner(phi, psi);
}

cplx weak_value_from_rho(const ObservableSymbol &symbol, const PhaseSpaceField &rho) {
    const Axis &xs = rho.x_axis();
    const Axis &ps = rho.p_axis();
    return std::visit(
        [&](const auto &a) -> cplx {
            using T = std::decay_t<decltype(a)>;
            cplx s{};
            if constexpr (std::is_same_v<T, observable::CoordinateX>) {
                for (std::size_t j = 0; j < rho.rows(); ++j)
                    for (std::size_t k = 0; k < rho.cols(); ++k)
                        s += xs.at(j) * rho(j, k);
                return s * rho.cell_measure();
            } else if constexpr (std::is_same_v<T, observable::CoordinateP>) {
                for (std::size_t j = 0; j < rho.rows(); ++j)
                    for (std::size_t k = 0; k < rho.cols(); ++k)
                        s += ps.at(k) * rho(j, k);
                return s * rho.cell_measure();
            } else if constexpr (std::is_same_v<T, observable::Gridded>) {
                if (a.rows != rho.rows() || a.cols != rho.cols() || a.values.size() != a.rows * a.cols)
                    throw PreconditionError("observable symbol shape does not match the field lattice");
                for (std::size_t i = 0; i < a.values.size(); ++i)
                    s += a.values[i] * rho.values()[i];
                return s * rho.cell_measure();
            } else {
                if (rho.lattice() != Lattice::wigner)
                    throw PreconditionError("position projectors need a wigner-lattice field");
                if (a.index >= rho.rows())
                    throw PreconditionError("projector index " + std::to_string(a.index) +
                                            " is outside the position lattice");
                return row_integral(rho, a.index);
            }
        },
        symbol);
}

cplx weak_value_direct(const ObservableSymbol &symbol, const SampledState &phi,
                       const SampledState &psi, double overlap_tolerance) {
    if (std::holds_alternative<observable::Gridded>(symbol))
        throw PreconditionError("weak_value_direct: gridded symbols have no direct operator route");
    const cplx overlap = checked_overlap(phi, psi, overlap_tolerance);
    const Grid &g = phi.grid();

    if (std::holds_alternative<observable::CoordinateX>(symbol)) {
        cplx s{};
        for (std::size_t j = 0; j < g.size(); ++j)
            s += std::conj(phi[j]) * g.x(j) * psi[j];
        return s * g.dx() / overlap;
    }
    if (std::holds_alternative<observable::CoordinateP>(symbol)) {
        const SampledState fphi = hbar_fourier(phi);
        const SampledState fpsi = hbar_fourier(psi);
        cplx s{};
        for (std::size_t k = 0; k < g.size(); ++k)
            s += std::conj(fphi[k]) * g.p(k) * fpsi[k];
        return s * g.dp() / overlap;
    }
    const auto &proj = std::get<observable::PositionProjector>(symbol);
    if (proj.index >= g.size())
        throw PreconditionError("projector index " + std::to_string(proj.index) +
                                " is outside the position lattice");
    return std::conj(phi[proj.index]) * psi[proj.index] / overlap;
}

Marginals marginals(const PhaseSpaceField &rho, const SampledState &phi, const SampledState &psi) {
    if (!(rho.grid() == phi.grid()) || !(phi.grid() == psi.grid()))
        throw PreconditionError("marginals: field and states live on different grids");
    if (rho.lattice() != Lattice::wigner)
        throw PreconditionError("marginals: rho must be on the wigner lattice");
    const cplx overlap = inner_product(phi, psi);
    const std::size_t n = rho.rows();

    Marginals out;
    out.x_marginal.resize(n);
    out.p_marginal.assign(rho.cols(), cplx{});
    for (std::size_t j = 0; j < n; ++j)
        out.x_marginal[j] = row_integral(rho, j);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < rho.cols(); ++k)
            out.p_marginal[k] += rho(j, k);
    for (cplx &v : out.p_marginal)
        v *= rho.x_axis().step;

    out.x_residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx expected = std::conj(phi[j]) * psi[j] / overlap;
        out.x_residual = std::max(out.x_residual, std::abs(out.x_marginal[j] - expected));
    }
    const auto fphi = fourier_transform_at(phi, rho.p_axis());
    const auto fpsi = fourier_transform_at(psi, rho.p_axis());
    out.p_residual = 0.0;
    for (std::size_t k = 0; k < rho.cols(); ++k) {
        const cplx expected = std::conj(fphi[k]) * fpsi[k] / overlap;
        out.p_residual = std::max(out.p_residual, std::abs(out.p_marginal[k] - expected));
    }
    return out;
}

std::vector<cplx> projector_weak_value_scan(const SampledState &psi, double p0,
                                            double overlap_tolerance) {
    const Grid &g = psi.grid();
    const SampledState post = make_reference_state(PlaneWave{p0}, g);
    const PhaseSpaceField rho = quasi_distribution_rho(post, psi, overlap_tolerance);
    std::vector<cplx> scan(g.size());
    for (std::size_t j = 0; j < g.size(); ++j)
        scan[j] = row_integral(rho, j);
    return scan;
}

std::vector<cplx> projector_weak_value_closed_form(const SampledState &psi, double p0) {
    const Grid &g = psi.grid();
    const cplx fpsi = fourier_transform_at(psi, p0);
    const double amp = 1.0 / std::sqrt(two_pi * g.hbar());
    std::vector<cplx> out(g.size());
    for (std::size_t j = 0; j < g.size(); ++j)
        out[j] = std::polar(amp, -p0 * g.x(j) / g.hbar()) * psi[j] / fpsi;
    return out;
}

SampledState lundeen_reconstruct(std::span<const cplx> scan, double p0, cplx k, const Grid &grid) {
    if (scan.size() != grid.size())
        throw PreconditionError("scan length does not match the grid");
    const double amp = std::sqrt(two_pi * grid.hbar());
    std::vector<cplx> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        out[j] = k * std::polar(amp, p0 * grid.x(j) / grid.hbar()) * scan[j];
    return {grid, std::move(out)};
}

WeakValueReport pointer_readout(cplx value, double g, double v, double hbar) {
    return {value, g * value.real(), 2.0 * g * v / hbar * value.imag(), g, v};
}

} // namespace weft
