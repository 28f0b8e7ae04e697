#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "weft/errors.hpp"
#include "weft/io.hpp"
#include "weft/reconstruction.hpp"
#include "weft/verification.hpp"
#include "weft/weak_values.hpp"

namespace py = pybind11;
using namespace weft;

namespace {

using carray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

carray to_array(std::span<const cplx> v) { return carray(static_cast<py::ssize_t>(v.size()), v.data()); }

py::array_t<double> axis_values(const Axis &a) {
    py::array_t<double> out(static_cast<py::ssize_t>(a.size));
    auto m = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < a.size; ++i)
        m(i) = a.at(i);
    return out;
}

ObservableSymbol parse_observable(const py::object &obs, const PhaseSpaceField &rho) {
    if (py::isinstance<py::str>(obs)) {
        const auto s = obs.cast<std::string>();
        if (s == "x")
            return observable::CoordinateX{};
        if (s == "p")
            return observable::CoordinateP{};
        if (s.rfind("proj:", 0) == 0)
            return observable::PositionProjector{std::stoul(s.substr(5))};
        throw PreconditionError("observable must be 'x', 'p', 'proj:<index>' or a 2-D array");
    }
    auto arr = obs.cast<carray>();
    if (arr.ndim() != 2)
        throw PreconditionError("gridded observable must be a 2-D array");
    observable::Gridded g{static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)), {}};
    g.values.assign(arr.data(), arr.data() + arr.size());
    (void)rho;
    return g;
}

py::dict report_dict(const VerificationReport &r) {
    py::list checks;
    for (const auto &c : r.checks) {
        py::dict d;
        d["name"] = c.name;
        d["residual"] = c.residual;
        d["tolerance"] = c.tolerance;
        d["passed"] = c.pass;
        d["note"] = c.note;
        checks.append(d);
    }
    py::dict out;
    out["n"] = r.n;
    out["dx"] = r.dx;
    out["hbar"] = r.hbar;
    out["seed"] = r.seed;
    out["all_pass"] = r.all_pass();
    out["conventions"] = r.conventions;
    out["checks"] = checks;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cross-Wigner transforms, weak values and state reconstruction on uniform grids";

    auto base = py::register_exception<Error>(m, "WeftError", PyExc_RuntimeError);
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<OrthogonalityError>(m, "OrthogonalityError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    py::class_<Grid>(m, "Grid")
        .def(py::init<std::size_t, double, double, double>(), py::arg("n"), py::arg("dx"), py::arg("x_min"),
             py::arg("hbar") = 1.0)
        .def_property_readonly("n", &Grid::size)
        .def_property_readonly("dx", &Grid::dx)
        .def_property_readonly("dp", &Grid::dp)
        .def_property_readonly("x_min", &Grid::x_min)
        .def_property_readonly("p_min", &Grid::p_min)
        .def_property_readonly("hbar", &Grid::hbar)
        .def_property_readonly("x", [](const Grid &g) { return axis_values(g.position_axis()); })
        .def_property_readonly("p", [](const Grid &g) { return axis_values(g.momentum_axis()); })
        .def("__eq__", [](const Grid &a, const Grid &b) { return a == b; })
        .def("__repr__", [](const Grid &g) {
            return "Grid(n=" + std::to_string(g.size()) + ", dx=" + io::format_double(g.dx()) +
                   ", hbar=" + io::format_double(g.hbar()) + ")";
        });
    m.def("make_grid", &make_grid, py::arg("n"), py::arg("dx"), py::arg("hbar") = 1.0);

    py::class_<SampledState>(m, "State")
        .def(py::init([](const Grid &g, const carray &v) {
                 if (v.ndim() != 1)
                     throw PreconditionError("state samples must be a 1-D array");
                 return SampledState(g, std::vector<cplx>(v.data(), v.data() + v.size()));
             }),
             py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", &SampledState::grid)
        .def_property_readonly("values", [](const SampledState &s) { return to_array(s.values()); })
        .def_property_readonly("in_momentum_basis", [](const SampledState &s) { return s.basis() == Basis::momentum; })
        .def("norm", &SampledState::norm)
        .def("__len__", &SampledState::size)
        .def("__add__", [](const SampledState &a, const SampledState &b) { return a + b; })
        .def("__sub__", [](const SampledState &a, const SampledState &b) { return a - b; })
        .def("__rmul__", [](const SampledState &s, cplx c) { return c * s; })
        .def("__mul__", [](const SampledState &s, cplx c) { return c * s; });

    m.def("gaussian", [](const Grid &g, double x0, double p0, double width) {
        return make_reference_state(Gaussian{x0, p0, width}, g);
    }, py::arg("grid"), py::arg("x0") = 0.0, py::arg("p0") = 0.0, py::arg("width") = 1.0);
    m.def("hermite", [](const Grid &g, int order) { return make_reference_state(Hermite{order}, g); },
          py::arg("grid"), py::arg("order"));
    m.def("plane_wave", [](const Grid &g, double p0) { return make_reference_state(PlaneWave{p0}, g); },
          py::arg("grid"), py::arg("p0"));
    m.def("inner_product", &inner_product, py::arg("phi"), py::arg("psi"));
    m.def("normalize", &normalize);
    m.def("fourier", [](const SampledState &s, bool inverse) {
        return hbar_fourier(s, inverse ? FourierDirection::inverse : FourierDirection::forward);
    }, py::arg("state"), py::arg("inverse") = false);

    py::class_<PhaseSpaceField>(m, "Field")
        .def_property_readonly("grid", &PhaseSpaceField::grid)
        .def_property_readonly("lattice", [](const PhaseSpaceField &f) {
            return f.lattice() == Lattice::wigner ? "wigner" : "ambiguity";
        })
        .def_property_readonly("x", [](const PhaseSpaceField &f) { return axis_values(f.x_axis()); })
        .def_property_readonly("p", [](const PhaseSpaceField &f) { return axis_values(f.p_axis()); })
        .def_property_readonly("cell_measure", &PhaseSpaceField::cell_measure)
        .def_property_readonly("values", [](const PhaseSpaceField &f) {
            carray out({static_cast<py::ssize_t>(f.rows()), static_cast<py::ssize_t>(f.cols())});
            std::copy(f.values().begin(), f.values().end(), out.mutable_data());
            return out;
        })
        .def("integral", &PhaseSpaceField::integral)
        .def("conj", &PhaseSpaceField::conj);

    m.def("cross_wigner", &cross_wigner, py::arg("phi"), py::arg("psi"));
    m.def("cross_ambiguity", &cross_ambiguity, py::arg("phi"), py::arg("psi"));
    m.def("symplectic_fourier", &symplectic_fourier);
    m.def("cross_wigner_via_gr", [](const SampledState &phi, const SampledState &psi, double x, double p) {
        return cross_wigner_via_gr(phi, psi, {x, p});
    }, py::arg("phi"), py::arg("psi"), py::arg("x"), py::arg("p"));
    m.def("grossmann_royer", [](const SampledState &s, double x0, double p0) {
        return grossmann_royer_apply({x0, p0}, s);
    }, py::arg("state"), py::arg("x0"), py::arg("p0"));
    m.def("brute_force_cross_wigner", [](const SampledState &phi, const SampledState &psi, double x, double p) {
        return brute_force_cross_wigner(phi, psi, {x, p});
    }, py::arg("phi"), py::arg("psi"), py::arg("x"), py::arg("p"));

    m.def("quasi_distribution_rho", [](const SampledState &phi, const SampledState &psi) {
        return quasi_distribution_rho(phi, psi);
    }, py::arg("phi"), py::arg("psi"));
    m.def("weak_value", [](const py::object &obs, const PhaseSpaceField &rho) {
        return weak_value_from_rho(parse_observable(obs, rho), rho);
    }, py::arg("observable"), py::arg("rho"), "Phase-space average of an observable against rho.");
    m.def("weak_value_direct", [](const std::string &obs, const SampledState &phi, const SampledState &psi) {
        return weak_value_direct(parse_observable(py::str(obs), PhaseSpaceField(phi.grid(), Lattice::wigner)), phi, psi);
    }, py::arg("observable"), py::arg("phi"), py::arg("psi"));
    m.def("marginals", [](const PhaseSpaceField &rho, const SampledState &phi, const SampledState &psi) {
        const auto mg = marginals(rho, phi, psi);
        return py::make_tuple(to_array(mg.x_marginal), to_array(mg.p_marginal), mg.x_residual, mg.p_residual);
    }, py::arg("rho"), py::arg("phi"), py::arg("psi"));
    m.def("pointer_readout", [](cplx value, double g, double v, double hbar) {
        const auto r = pointer_readout(value, g, v, hbar);
        return py::make_tuple(r.pointer_x_mean, r.pointer_p_mean);
    }, py::arg("value"), py::arg("g") = 1.0, py::arg("v") = 1.0, py::arg("hbar") = 1.0);
    m.def("projector_scan", [](const SampledState &psi, double p0) {
        return to_array(projector_weak_value_scan(psi, p0));
    }, py::arg("psi"), py::arg("p0"));
    m.def("lundeen_reconstruct", [](const carray &scan, double p0, cplx k, const Grid &g) {
        return lundeen_reconstruct(std::span<const cplx>(scan.data(), scan.size()), p0, k, g);
    }, py::arg("scan"), py::arg("p0"), py::arg("k"), py::arg("grid"));

    m.def("default_gamma", &default_gamma);
    m.def("reconstruct_phi", [](const PhaseSpaceField &W, const SampledState &psi, const SampledState &gamma) {
        return reconstruct_phi(W, psi, gamma).state;
    }, py::arg("W"), py::arg("psi"), py::arg("gamma"));
    m.def("reconstruct_psi", [](const PhaseSpaceField &W, const SampledState &phi, const SampledState &gamma) {
        return reconstruct_psi(W, phi, gamma).state;
    }, py::arg("W"), py::arg("phi"), py::arg("gamma"));

    m.def("verify", [](std::size_t n, double dx, double hbar, std::uint64_t seed) {
        py::gil_scoped_release release;
        auto r = run_verification_suite(make_grid(n, dx, hbar), seed);
        py::gil_scoped_acquire acquire;
        return report_dict(r);
    }, py::arg("n") = 256, py::arg("dx") = 0.1, py::arg("hbar") = 1.0, py::arg("seed") = 42);

    m.def("load_state", [](const std::filesystem::path &p) { return io::load_state(p).state; });
    m.def("save_state", [](const SampledState &s, const std::filesystem::path &p, const std::string &label) {
        io::save_state(s, p, label);
    }, py::arg("state"), py::arg("path"), py::arg("label") = "");
}
