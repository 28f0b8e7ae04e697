#include "weft/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weft/detail/lattice_dft.hpp"
#include "weft/errors.hpp"

namespace weft {

namespace {

void require_same_grid(const SampledState &a, const SampledState &b, const char *op) {
    if (!(a.grid() == b.grid()))
        throw PreconditionError(std::string(op) + ": states live on different grids");
    if (a.basis() != b.basis())
        throw PreconditionError(std::string(op) + ": states are in different bases");
}

} // namespace

SampledState::SampledState(Grid grid, std::vector<cplx> values, Basis basis)
    : grid_(grid), values_(std::move(values)), basis_(basis) {
    if (values_.size() != grid_.size())
        throw PreconditionError("state has " + std::to_string(values_.size()) +
                                " samples but the grid has " + std::to_string(grid_.size()));
    for (const cplx &v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw PreconditionError("state samples must be finite");
}

Axis SampledState::axis() const {
    return basis_ == Basis::position ? grid_.position_axis() : grid_.momentum_axis();
}

double SampledState::weight() const { return basis_ == Basis::position ? grid_.dx() : grid_.dp(); }

double SampledState::norm() const {
    double s = 0.0;
    for (const cplx &v : values_)
        s += std::norm(v);
    return std::sqrt(s * weight());
}

SampledState SampledState::conj() const {
    std::vector<cplx> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](cplx v) { return std::conj(v); });
    return {grid_, std::move(out), basis_};
}

SampledState operator+(const SampledState &a, const SampledState &b) {
    require_same_grid(a, b, "state addition");
    std::vector<cplx> out(a.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = a[j] + b[j];
    return {a.grid(), std::move(out), a.basis()};
}

SampledState operator-(const SampledState &a, const SampledState &b) {
    require_same_grid(a, b, "state subtraction");
    std::vector<cplx> out(a.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = a[j] - b[j];
    return {a.grid(), std::move(out), a.basis()};
}

SampledState operator*(cplx c, const SampledState &s) {
    std::vector<cplx> out(s.size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = c * s[j];
    return {s.grid(), std::move(out), s.basis()};
}

cplx inner_product(const SampledState &phi, const SampledState &psi) {
    require_same_grid(phi, psi, "inner_product");
    cplx s{};
    for (std::size_t j = 0; j < phi.size(); ++j)
        s += std::conj(phi[j]) * psi[j];
    return s * phi.weight();
}

SampledState normalize(const SampledState &psi) {
    const double nrm = psi.norm();
    if (!(nrm > 0.0))
        throw PreconditionError("cannot normalize the zero state");
    return cplx(1.0 / nrm) * psi;
}

SampledState hbar_fourier(const SampledState &psi, FourierDirection direction) {
    const Grid &g = psi.grid();
    const double hbar = g.hbar();
    const double scale = 1.0 / std::sqrt(two_pi * hbar);
    if (direction == FourierDirection::forward) {
        if (psi.basis() != Basis::position)
            throw PreconditionError("forward Fourier transform expects a position-basis state");
        auto out = detail::lattice_dft(psi.values(), g.position_axis(), g.momentum_axis(), -1, hbar);
        for (cplx &v : out)
            v *= scale * g.dx();
        return {g, std::move(out), Basis::momentum};
    }
    if (psi.basis() != Basis::momentum)
        throw PreconditionError("inverse Fourier transform expects a momentum-basis state");
    auto out = detail::lattice_dft(psi.values(), g.momentum_axis(), g.position_axis(), +1, hbar);
    for (cplx &v : out)
        v *= scale * g.dp();
    return {g, std::move(out), Basis::position};
}

cplx fourier_transform_at(const SampledState &psi, double p) {
    if (psi.basis() != Basis::position)
        throw PreconditionError("fourier_transform_at expects a position-basis state");
    const Grid &g = psi.grid();
    cplx s{};
    for (std::size_t j = 0; j < psi.size(); ++j)
        s += std::polar(1.0, -p * g.x(j) / g.hbar()) * psi[j];
    return s * (g.dx() / std::sqrt(two_pi * g.hbar()));
}

std::vector<cplx> fourier_transform_at(const SampledState &psi, const Axis &momenta) {
    std::vector<cplx> out(momenta.size);
    for (std::size_t k = 0; k < momenta.size; ++k)
        out[k] = fourier_transform_at(psi, momenta.at(k));
    return out;
}

namespace {

std::vector<cplx> gaussian_samples(const Gaussian &shape, const Grid &g) {
    if (!(shape.width > 0.0) || !std::isfinite(shape.width))
        throw PreconditionError("gaussian width must be positive");
    const double amp = std::pow(std::numbers::pi * shape.width * shape.width, -0.25);
    std::vector<cplx> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double u = (g.x(j) - shape.x0) / shape.width;
        v[j] = amp * std::exp(-0.5 * u * u) * std::polar(1.0, shape.p0 * g.x(j) / g.hbar());
    }
    return v;
}

std::vector<cplx> hermite_samples(const Hermite &shape, const Grid &g) {
    if (shape.order < 0)
        throw PreconditionError("hermite order must be non-negative");
    const double scale = std::sqrt(g.hbar());
    std::vector<cplx> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        // Normalized Hermite functions by the stable three-term recurrence.
        const double xi = g.x(j) / scale;
        double prev = 0.0;
        double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi) / std::sqrt(scale);
        for (int k = 0; k < shape.order; ++k) {
            const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(double(k) / (k + 1)) * prev;
            prev = cur;
            cur = next;
        }
        v[j] = cur;
    }
    return v;
}

} // namespace

SampledState make_reference_state(const ReferenceKind &kind, const Grid &grid) {
    if (const auto *g = std::get_if<Gaussian>(&kind))
        return normalize(SampledState(grid, gaussian_samples(*g, grid)));
    if (const auto *h = std::get_if<Hermite>(&kind))
        return normalize(SampledState(grid, hermite_samples(*h, grid)));

    const auto &pw = std::get<PlaneWave>(kind);
    if (grid.momentum_index(pw.p0) < 0)
        throw PreconditionError("plane wave momentum " + std::to_string(pw.p0) +
                                " is not on the momentum lattice (dp = " + std::to_string(grid.dp()) + ")");
    const double amp = 1.0 / std::sqrt(two_pi * grid.hbar());
    std::vector<cplx> v(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        v[j] = std::polar(amp, pw.p0 * grid.x(j) / grid.hbar());
    return {grid, std::move(v)};
}

double mass_outside_central_half(const SampledState &psi) {
    const std::size_t n = psi.size();
    double total = 0.0;
    double outside = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::norm(psi[j]);
        total += w;
        if (j < n / 4 || j >= n - n / 4)
            outside += w;
    }
    return total > 0.0 ? outside / total : 0.0;
}

} // namespace weft
