#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "support.hpp"
#include "weft/errors.hpp"
#include "weft/verification.hpp"
#include "weft/weak_values.hpp"

using Catch::Matchers::WithinAbs;
using weft::cplx;
namespace obs = weft::observable;

namespace {
const weft::Grid rig = weft::make_grid(256, 0.1, 1.0);

weft::SampledState h(int k) { return weft::make_reference_state(weft::Hermite{k}, rig); }
weft::SampledState gauss(double a, double p0 = 0.0, double w = 1.0) {
    return weft::make_reference_state(weft::Gaussian{a, p0, w}, rig);
}
} // namespace

TEST_CASE("quasi-distribution examples") {
    const auto r = weft::quasi_distribution_rho(h(0), h(0));
    CHECK(std::abs(r.integral() - 1.0) <= 1e-6);
    double im = 0.0;
    for (cplx v : r.values()) im = std::max(im, std::abs(v.imag()));
    CHECK(im <= 1e-12);

    const auto rs = weft::quasi_distribution_rho(gauss(1.0), h(0));
    CHECK(std::abs(rs.integral().imag()) <= 1e-6);
    CHECK(std::abs(rs.integral().real() - 1.0) <= 1e-6);
}

TEST_CASE("orthogonal pairs are rejected with the overlap magnitude") {
    try {
        (void)weft::quasi_distribution_rho(h(1), h(0));
        FAIL("expected OrthogonalityError");
    } catch (const weft::OrthogonalityError &e) {
        CHECK(e.overlap_magnitude() <= 1e-10);
        CHECK(std::string(e.what()).find("|<phi|psi>|") != std::string::npos);
    }
    CHECK_THROWS_AS(weft::weak_value_direct(obs::CoordinateX{}, h(1), h(0)), weft::OrthogonalityError);
}

TEST_CASE("weak values from rho") {
    const auto r0 = weft::quasi_distribution_rho(h(0), h(0));
    CHECK(std::abs(weft::weak_value_from_rho(obs::CoordinateX{}, r0)) <= 1e-8);

    const auto r = weft::quasi_distribution_rho(gauss(1.0), h(0));
    const cplx xw = weft::weak_value_from_rho(obs::CoordinateX{}, r);
    CHECK_THAT(xw.real(), WithinAbs(0.5, 1e-6));
    CHECK(std::abs(xw.imag()) <= 1e-6);

    // p weak value for phi = G(1), psi = G(0): <phi|p|psi>/<phi|psi> = i * 0.5
    const cplx pw = weft::weak_value_from_rho(obs::CoordinateP{}, r);
    const auto of = oracle::gaussian(1.0), og = oracle::gaussian(0.0);
    const cplx num = oracle::integrate([&](double x) { return std::conj(of(x)) * cplx(0.0, x) * og(x); });
    const cplx pref = num / oracle::overlap(of, og);
    CHECK(std::abs(pw - pref) <= 1e-6);
    CHECK(std::abs(pw - cplx(0.0, 0.5)) <= 1e-6);

    obs::Gridded one{r.rows(), r.cols(), std::vector<cplx>(r.rows() * r.cols(), 1.0)};
    CHECK(std::abs(weft::weak_value_from_rho(one, r) - 1.0) <= 1e-6);

    obs::Gridded bad{r.rows(), r.cols() - 1, std::vector<cplx>(r.rows() * (r.cols() - 1), 1.0)};
    CHECK_THROWS_AS(weft::weak_value_from_rho(bad, r), weft::PreconditionError);
    CHECK_THROWS_AS(weft::weak_value_from_rho(obs::PositionProjector{256}, r), weft::PreconditionError);
}

TEST_CASE("gridded symbol of x reproduces the coordinate route") {
    const auto r = weft::quasi_distribution_rho(gauss(0.4, 0.2), gauss(-0.3, 0.5, 0.9));
    obs::Gridded xs{r.rows(), r.cols(), {}};
    for (std::size_t j = 0; j < r.rows(); ++j)
        for (std::size_t k = 0; k < r.cols(); ++k) xs.values.push_back(r.x_axis().at(j));
    CHECK(std::abs(weft::weak_value_from_rho(xs, r) - weft::weak_value_from_rho(obs::CoordinateX{}, r)) <=
          1e-12);
}

TEST_CASE("direct weak values") {
    CHECK(std::abs(weft::weak_value_direct(obs::CoordinateX{}, h(0), h(0))) <= 1e-10);
    CHECK(std::abs(weft::weak_value_direct(obs::CoordinateP{}, h(0), h(0))) <= 1e-10);
    CHECK(std::abs(weft::weak_value_direct(obs::CoordinateX{}, gauss(1.0), h(0)) - 0.5) <= 1e-8);
    obs::Gridded g{1, 1, {1.0}};
    CHECK_THROWS_AS(weft::weak_value_direct(g, h(0), h(0)), weft::PreconditionError);

    const auto phi = gauss(0.3, 0.1), psi = gauss(-0.2, 0.4);
    const cplx pj = weft::weak_value_direct(obs::PositionProjector{130}, phi, psi);
    CHECK(std::abs(pj - std::conj(phi[130]) * psi[130] / weft::inner_product(phi, psi)) <= 1e-14);
    const auto r = weft::quasi_distribution_rho(phi, psi);
    CHECK(std::abs(weft::weak_value_from_rho(obs::PositionProjector{130}, r) - pj) <= 1e-8);
}

TEST_CASE("oracle agreement on random pairs") {
    weft::RandomStateSource src(rig, 42);
    for (int t = 0; t < 10; ++t) {
        const auto [phi, psi] = src.next_pair();
        const auto r = weft::quasi_distribution_rho(phi, psi);
        CHECK(std::abs(weft::weak_value_from_rho(obs::CoordinateX{}, r) -
                       weft::weak_value_direct(obs::CoordinateX{}, phi, psi)) <= 1e-6);
        CHECK(std::abs(weft::weak_value_from_rho(obs::CoordinateP{}, r) -
                       weft::weak_value_direct(obs::CoordinateP{}, phi, psi)) <= 1e-6);
    }
}

TEST_CASE("marginals") {
    const auto r0 = weft::quasi_distribution_rho(h(0), h(0));
    const auto m0 = weft::marginals(r0, h(0), h(0));
    CHECK(m0.x_residual <= 1e-6);
    CHECK(m0.p_residual <= 1e-6);
    cplx total = 0.0;
    for (std::size_t j = 0; j < rig.size(); ++j) {
        CHECK(std::abs(m0.x_marginal[j] - std::norm(h(0)[j])) <= 1e-6);
        total += m0.x_marginal[j] * rig.dx();
    }
    CHECK(std::abs(total - 1.0) <= 1e-6);

    weft::RandomStateSource src(rig, 1);
    for (int t = 0; t < 5; ++t) {
        const auto [phi, psi] = src.next_pair();
        const auto m = weft::marginals(weft::quasi_distribution_rho(phi, psi), phi, psi);
        CHECK(m.x_residual <= 1e-6);
        CHECK(m.p_residual <= 1e-6);
    }
    const auto other = weft::make_reference_state(weft::Hermite{0}, weft::make_grid(128, 0.1));
    CHECK_THROWS_AS(weft::marginals(r0, other, other), weft::PreconditionError);
}

TEST_CASE("projector scan") {
    const auto scan = weft::projector_weak_value_scan(h(0), 0.0);
    CHECK_THAT(scan[128].real(), WithinAbs(0.398942, 1e-6));
    CHECK_THAT(scan[128].real(), WithinAbs(1 / std::sqrt(2 * M_PI), 1e-8));
    const double ratio = scan[128].real() / h(0)[128].real();
    for (std::size_t j = 0; j < rig.size(); ++j) {
        CHECK(std::abs(scan[j].imag()) <= 1e-10);
        CHECK(std::abs(scan[j] - ratio * h(0)[j]) <= 1e-8);
    }
    CHECK_THROWS_AS(weft::projector_weak_value_scan(h(1), 0.0), weft::OrthogonalityError);
    CHECK_THROWS_AS(weft::projector_weak_value_scan(h(0), 0.5 * rig.dp()), weft::PreconditionError);

    for (const auto &psi : {h(0), h(2), gauss(0.5, 2 * rig.dp(), 0.8)}) {
        const double p0 = rig.p(129);
        const auto s = weft::projector_weak_value_scan(psi, p0);
        const auto c = weft::projector_weak_value_closed_form(psi, p0);
        for (std::size_t j = 0; j < rig.size(); ++j) CHECK(std::abs(s[j] - c[j]) <= 1e-6);
    }
}

TEST_CASE("Lundeen reconstruction") {
    {
        const auto scan = weft::projector_weak_value_scan(h(0), 0.0);
        const auto rec = weft::lundeen_reconstruct(scan, 0.0, std::pow(M_PI, -0.25), rig);
        CHECK(support::max_abs(rec, h(0)) <= 1e-8);
    }
    {
        const double p0 = 2 * rig.dp();
        const auto psi = gauss(1.0, p0);
        const auto scan = weft::projector_weak_value_scan(psi, p0);
        const cplx k = weft::fourier_transform_at(psi, p0);
        const auto rec = weft::lundeen_reconstruct(scan, p0, k, rig);
        CHECK(support::max_abs(rec, psi) <= 1e-7);
    }
    {
        const auto scan = weft::projector_weak_value_scan(h(0), 0.0);
        const auto rec = weft::lundeen_reconstruct(scan, 0.0, 0.0, rig);
        CHECK(rec.norm() == 0.0);
    }
    std::vector<cplx> short_scan(10);
    CHECK_THROWS_AS(weft::lundeen_reconstruct(short_scan, 0.0, 1.0, rig), weft::PreconditionError);
}

TEST_CASE("pointer readout") {
    auto r = weft::pointer_readout({1.0, 0.0}, 1.0, 1.0, 1.0);
    CHECK(r.pointer_x_mean == 1.0);
    CHECK(r.pointer_p_mean == 0.0);
    r = weft::pointer_readout({0.0, 1.0}, 1.0, 1.0, 1.0);
    CHECK(r.pointer_x_mean == 0.0);
    CHECK(r.pointer_p_mean == 2.0);
    r = weft::pointer_readout({0.5, 0.25}, 2.0, 1.0, 1.0);
    CHECK_THAT(r.pointer_x_mean, WithinAbs(1.0, 1e-15));
    CHECK_THAT(r.pointer_p_mean, WithinAbs(1.0, 1e-15));
    r = weft::pointer_readout({0.3, -0.7}, 0.5, 3.0, 0.25);
    CHECK_THAT(r.pointer_p_mean, WithinAbs(2 * 0.5 * 3.0 / 0.25 * -0.7, 1e-14));
}
