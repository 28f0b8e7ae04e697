#include "weft/reconstruction.hpp"

#include <cmath>
#include <sstream>

#include "weft/detail/lattice_dft.hpp"
#include "weft/detail/parallel.hpp"
#include "weft/errors.hpp"

namespace weft {

namespace {

constexpr double support_threshold = 1e-8;

cplx checked_overlap(const SampledState &known, const SampledState &gamma, double tolerance,
                     const char *names) {
    const cplx overlap = inner_product(known, gamma);
    if (!(std::abs(overlap) > tolerance)) {
        std::ostringstream msg;
        msg << "auxiliary state is numerically orthogonal to the known state: |" << names
            << "| = " << std::abs(overlap) << " <= tolerance " << tolerance;
        throw OrthogonalityError(msg.str(), std::abs(overlap));
    }
    return overlap;
}

void check_inputs(const PhaseSpaceField &field, const SampledState &known, const SampledState &gamma) {
    if (field.lattice() != Lattice::wigner)
        throw PreconditionError("reconstruction needs a field on the wigner lattice");
    if (!(field.grid() == known.grid()) || !(known.grid() == gamma.grid()))
        throw PreconditionError("reconstruction: field and states live on different grids");
    if (known.basis() != Basis::position || gamma.basis() != Basis::position)
        throw PreconditionError("reconstruction: states must be in the position basis");
}

std::vector<std::string> support_warnings(const SampledState &known, const SampledState &gamma) {
    std::vector<std::string> out;
    auto check = [&](const SampledState &s, const char *name) {
        const double outside = mass_outside_central_half(s);
        if (outside > support_threshold) {
            std::ostringstream msg;
            msg << name << " has " << outside
                << " of its mass outside the central half of the window; "
                   "reflections may be truncated";
            out.push_back(msg.str());
        }
    };
    check(known, "known state");
    check(gamma, "gamma");
    return out;
}

// chi(x_i) = prefactor * sum_{j,k} K(x_j,p_k) exp(2i p_k (x_i - x_j)/hbar) gamma(2 x_j - x_i) dx dp
// with K = field or conj(field). The k-sum for each row is one FFT onto
// offsets 2 (i - j) dx, which is n-periodic in i - j on the wigner lattice.
SampledState grossmann_royer_sum(const PhaseSpaceField &field, bool conjugate_field,
                                 const SampledState &gamma, cplx prefactor) {
    const Grid &g = field.grid();
    const std::size_t n = g.size();
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    const auto sn = static_cast<std::ptrdiff_t>(n);
    const Axis offsets{-static_cast<double>(n) * g.dx(), 2.0 * g.dx(), n};

    std::vector<cplx> row_sums(n * n);
    detail::parallel_for(n, [&](std::size_t j) {
        std::vector<cplx> row(field.row(j).begin(), field.row(j).end());
        if (conjugate_field)
            for (cplx &v : row)
                v = std::conj(v);
        const auto r = detail::lattice_dft(row, field.p_axis(), offsets, +1, g.hbar());
        std::copy(r.begin(), r.end(), row_sums.begin() + static_cast<std::ptrdiff_t>(j * n));
    });

    const cplx scale = prefactor * field.cell_measure();
    std::vector<cplx> out(n);
    detail::parallel_for(n, [&](std::size_t i) {
        const auto ii = static_cast<std::ptrdiff_t>(i);
        cplx acc{};
        for (std::ptrdiff_t j = 0; j < sn; ++j) {
            const cplx gam = gamma.at_or_zero(2 * j - ii);
            if (gam == cplx{})
                continue;
            std::ptrdiff_t l = ((ii - j) % sn + sn) % sn;
            if (l >= half)
                l -= sn;
            acc += row_sums[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(l + half)] * gam;
        }
        out[i] = scale * acc;
    });
    return {g, std::move(out)};
}

} // namespace

Reconstruction reconstruct_phi(const PhaseSpaceField &W, const SampledState &psi,
                               const SampledState &gamma, double overlap_tolerance) {
    check_inputs(W, psi, gamma);
    const cplx overlap = checked_overlap(psi, gamma, overlap_tolerance, "<psi|gamma>");
    return {grossmann_royer_sum(W, true, gamma, 2.0 / overlap), support_warnings(psi, gamma)};
}

Reconstruction reconstruct_psi(const PhaseSpaceField &W, const SampledState &phi,
                               const SampledState &gamma, double overlap_tolerance) {
    check_inputs(W, phi, gamma);
    const cplx overlap = checked_overlap(phi, gamma, overlap_tolerance, "<phi|gamma>");
    return {grossmann_royer_sum(W, false, gamma, 2.0 / overlap), support_warnings(phi, gamma)};
}

Reconstruction reconstruct_from_rho(const PhaseSpaceField &rho, const SampledState &known,
                                    const SampledState &gamma, cplx overlap, Unknown which,
                                    double overlap_tolerance) {
    check_inputs(rho, known, gamma);
    if (which == Unknown::phi) {
        // conj(W) = conj(<phi|psi>) conj(rho)
        const cplx kg = checked_overlap(known, gamma, overlap_tolerance, "<psi|gamma>");
        return {grossmann_royer_sum(rho, true, gamma, 2.0 * std::conj(overlap) / kg),
                support_warnings(known, gamma)};
    }
    const cplx kg = checked_overlap(known, gamma, overlap_tolerance, "<phi|gamma>");
    return {grossmann_royer_sum(rho, false, gamma, 2.0 * overlap / kg), support_warnings(known, gamma)};
}

SampledState default_gamma(const Grid &grid) {
    const double centre = grid.x(grid.size() / 2);
    return make_reference_state(Gaussian{centre, 0.0, std::sqrt(grid.hbar())}, grid);
}

ReconstructionError reconstruction_error(const SampledState &recovered, const SampledState &truth) {
    if (!(recovered.grid() == truth.grid()) || recovered.basis() != truth.basis())
        throw PreconditionError("reconstruction_error: states live on different grids");
    ReconstructionError e{};
    for (std::size_t j = 0; j < truth.size(); ++j)
        e.max_abs = std::max(e.max_abs, std::abs(recovered[j] - truth[j]));
    e.l2 = (recovered - truth).norm();
    const double denom = truth.norm() * recovered.norm();
    e.fidelity_defined = denom > 0.0;
    e.fidelity = e.fidelity_defined ? std::min(1.0, std::abs(inner_product(truth, recovered)) / denom) : 0.0;
    return e;
}

} // namespace weft
