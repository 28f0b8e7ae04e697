#include "weft/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "weft/errors.hpp"

namespace weft::io {

using nlohmann::json;

namespace {

std::string lattice_name(Lattice l) { return l == Lattice::wigner ? "wigner" : "ambiguity"; }

Lattice lattice_from_name(const std::string &s) {
    if (s == "wigner")
        return Lattice::wigner;
    if (s == "ambiguity")
        return Lattice::ambiguity;
    throw ParseError("field 'lattice': unknown lattice \"" + s + "\" (expected wigner or ambiguity)");
}

json read_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write " + path.string());
    out << text;
    if (!out)
        throw ParseError("failed writing " + path.string());
}

template <typename T>
T get_field(const json &obj, const char *key, const std::string &where) {
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(where + ": missing field '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        throw ParseError(where + ": field '" + key + "' has the wrong type");
    }
}

double finite_number(const json &v, const std::string &where) {
    if (!v.is_number())
        throw ParseError(where + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw ParseError(where + ": non-finite value");
    return d;
}

void check_version(const json &doc) {
    const auto version = get_field<std::string>(doc, "schema_version", "document");
    if (version != schema_version)
        throw ParseError("unsupported schema_version \"" + version + "\" (this build reads \"" +
                         std::string(schema_version) + "\")");
}

json grid_to_json(const Grid &g) {
    return {{"n", g.size()}, {"dx", g.dx()}, {"x_min", g.x_min()}, {"hbar", g.hbar()}};
}

Grid grid_from_json(const json &doc) {
    if (!doc.contains("grid"))
        throw ParseError("document: missing field 'grid'");
    const json &g = doc.at("grid");
    const auto n = get_field<std::size_t>(g, "n", "grid");
    const double dx = finite_number(g.value("dx", json()), "grid.dx");
    const double x_min = finite_number(g.value("x_min", json()), "grid.x_min");
    const double hbar = finite_number(g.value("hbar", json()), "grid.hbar");
    try {
        return Grid(n, dx, x_min, hbar);
    } catch (const PreconditionError &e) {
        throw ParseError(std::string("grid: ") + e.what());
    }
}

std::vector<double> number_array(const json &doc, const char *key, std::size_t expected) {
    if (!doc.contains(key))
        throw ParseError(std::string("document: missing field '") + key + "'");
    const json &arr = doc.at(key);
    if (!arr.is_array())
        throw ParseError(std::string("field '") + key + "' must be an array");
    if (arr.size() != expected)
        throw ParseError(std::string("field '") + key + "' has " + std::to_string(arr.size()) +
                         " entries, expected " + std::to_string(expected));
    std::vector<double> out(expected);
    for (std::size_t i = 0; i < expected; ++i)
        out[i] = finite_number(arr[i], std::string(key) + "[" + std::to_string(i) + "]");
    return out;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

} // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json state_to_json(const SampledState &state, const std::string &label) {
    if (state.basis() != Basis::position)
        throw PreconditionError("state files hold position-basis samples");
    json re = json::array(), im = json::array();
    for (const cplx &v : state.values()) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    json doc = {{"schema_version", schema_version}, {"grid", grid_to_json(state.grid())}, {"re", re}, {"im", im}};
    if (!label.empty())
        doc["label"] = label;
    return doc;
}

StateFile state_from_json(const json &doc) {
    check_version(doc);
    const Grid grid = grid_from_json(doc);
    const auto re = number_array(doc, "re", grid.size());
    const auto im = number_array(doc, "im", grid.size());
    std::vector<cplx> values(grid.size());
    for (std::size_t j = 0; j < values.size(); ++j)
        values[j] = {re[j], im[j]};
    std::string label;
    if (doc.contains("label")) {
        if (!doc.at("label").is_string())
            throw ParseError("field 'label' must be a string");
        label = doc.at("label").get<std::string>();
    }
    return {SampledState(grid, std::move(values)), std::move(label)};
}

StateFile load_state(const std::filesystem::path &path) {
    const json doc = read_json(path);
    try {
        return state_from_json(doc);
    } catch (const ParseError &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_state(const SampledState &state, const std::filesystem::path &path, const std::string &label) {
    write_text(path, state_to_json(state, label).dump(1) + "\n");
}

json field_to_json(const FieldFile &file) {
    const PhaseSpaceField &f = file.field;
    json rows = json::array();
    for (std::size_t j = 0; j < f.rows(); ++j)
        for (std::size_t k = 0; k < f.cols(); ++k)
            rows.push_back({f.x_axis().at(j), f.p_axis().at(k), f(j, k).real(), f(j, k).imag()});
    json doc = {
        {"schema_version", schema_version},
        {"grid", grid_to_json(f.grid())},
        {"lattice", lattice_name(f.lattice())},
        {"quantity", file.quantity},
        {"x_lattice", {{"dx", f.x_axis().step}, {"x_min", f.x_axis().min}}},
        {"p_lattice", {{"dp", f.p_axis().step}, {"p_min", f.p_axis().min}}},
        {"rows", rows},
    };
    if (file.overlap)
        doc["overlap"] = {{"re", file.overlap->real()}, {"im", file.overlap->imag()}};
    return doc;
}

FieldFile field_from_json(const json &doc) {
    check_version(doc);
    const Grid grid = grid_from_json(doc);
    const Lattice lattice = lattice_from_name(get_field<std::string>(doc, "lattice", "document"));
    PhaseSpaceField shape(grid, lattice);

    if (!doc.contains("p_lattice"))
        throw ParseError("document: missing field 'p_lattice'");
    const double dp = finite_number(doc.at("p_lattice").value("dp", json()), "p_lattice.dp");
    const double p_min = finite_number(doc.at("p_lattice").value("p_min", json()), "p_lattice.p_min");
    if (!close(dp, shape.p_axis().step) || !close(p_min, shape.p_axis().min))
        throw ParseError("p_lattice: metadata inconsistent with the grid (expected dp = " +
                         format_double(shape.p_axis().step) + ")");
    if (doc.contains("x_lattice")) {
        const double dx = finite_number(doc.at("x_lattice").value("dx", json()), "x_lattice.dx");
        const double x_min = finite_number(doc.at("x_lattice").value("x_min", json()), "x_lattice.x_min");
        if (!close(dx, shape.x_axis().step) || !close(x_min, shape.x_axis().min))
            throw ParseError("x_lattice: metadata inconsistent with the grid");
    }

    if (!doc.contains("rows") || !doc.at("rows").is_array())
        throw ParseError("document: field 'rows' must be an array");
    const json &rows = doc.at("rows");
    const std::size_t n = grid.size();
    if (rows.size() != n * n)
        throw ParseError("field 'rows' has " + std::to_string(rows.size()) + " entries, expected " +
                         std::to_string(n * n));
    std::vector<cplx> values(n * n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json &r = rows[i];
        const std::string where = "rows[" + std::to_string(i) + "]";
        if (!r.is_array() || r.size() != 4)
            throw ParseError(where + ": expected [x, p, re, im]");
        const double x = finite_number(r[0], where + ".x");
        const double p = finite_number(r[1], where + ".p");
        if (!close(x, shape.x_axis().at(i / n)) || !close(p, shape.p_axis().at(i % n)))
            throw ParseError(where + ": (x, p) does not match the row-major lattice");
        values[i] = {finite_number(r[2], where + ".re"), finite_number(r[3], where + ".im")};
    }

    FieldFile out{PhaseSpaceField(grid, lattice, std::move(values)),
                  doc.value("quantity", std::string("unknown")), std::nullopt};
    if (doc.contains("overlap")) {
        const json &o = doc.at("overlap");
        out.overlap = cplx(finite_number(o.value("re", json()), "overlap.re"),
                           finite_number(o.value("im", json()), "overlap.im"));
    }
    return out;
}

FieldFile load_field(const std::filesystem::path &path) {
    const json doc = read_json(path);
    try {
        return field_from_json(doc);
    } catch (const ParseError &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string field_to_csv(const PhaseSpaceField &f) {
    std::string out = "x,p,re,im\n";
    out.reserve(out.size() + f.rows() * f.cols() * 80);
    for (std::size_t j = 0; j < f.rows(); ++j) {
        const std::string x = format_double(f.x_axis().at(j));
        for (std::size_t k = 0; k < f.cols(); ++k) {
            out += x;
            out += ',';
            out += format_double(f.p_axis().at(k));
            out += ',';
            out += format_double(f(j, k).real());
            out += ',';
            out += format_double(f(j, k).imag());
            out += '\n';
        }
    }
    return out;
}

FieldFormat format_for(const std::filesystem::path &path) {
    return path.extension() == ".csv" ? FieldFormat::csv : FieldFormat::json;
}

void dump_field(const FieldFile &field, const std::filesystem::path &path, FieldFormat format) {
    if (format == FieldFormat::csv)
        write_text(path, field_to_csv(field.field));
    else
        write_text(path, field_to_json(field).dump() + "\n");
}

json report_to_json(const VerificationReport &report) {
    json checks = json::array();
    for (const Check &c : report.checks) {
        json entry = {{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}};
        if (!c.note.empty())
            entry["note"] = c.note;
        checks.push_back(entry);
    }
    return {
        {"schema_version", schema_version},
        {"grid", {{"n", report.n}, {"dx", report.dx}, {"hbar", report.hbar}}},
        {"seed", report.seed},
        {"all_pass", report.all_pass()},
        {"conventions", report.conventions},
        {"checks", checks},
    };
}

json weak_value_to_json(const WeakValueReport &r, cplx overlap, double hbar, const std::string &observable) {
    return {
        {"schema_version", schema_version},
        {"observable", observable},
        {"value", {{"re", r.value.real()}, {"im", r.value.imag()}}},
        {"overlap", {{"re", overlap.real()}, {"im", overlap.imag()}, {"abs", std::abs(overlap)}}},
        {"g", r.g},
        {"v", r.v},
        {"hbar", hbar},
        {"pointer_x_mean", r.pointer_x_mean},
        {"pointer_p_mean", r.pointer_p_mean},
    };
}

json reconstruction_error_to_json(const ReconstructionError &e) {
    return {{"max_abs", e.max_abs}, {"l2", e.l2}, {"fidelity", e.fidelity}, {"fidelity_defined", e.fidelity_defined}};
}

} // namespace weft::io
