// io.cpp

#include "cohtrap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cohtrap/errors.hpp"
#include "cohtrap/version.hpp"

namespace cohtrap::io {

using nlohmann::json;
namespace ex = experiments;

std::string_view to_string(Format format) { return format == Format::csv ? "csv" : "json"; }

Format parse_format(std::string_view text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw domain_error("unknown format '" + std::string(text) + "' (expected csv|json)");
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.model == b.model && a.trapping == b.trapping && a.quad.abs_tol == b.quad.abs_tol &&
           a.quad.max_depth == b.quad.max_depth && a.qsl_mode == b.qsl_mode &&
           a.output_path == b.output_path && a.format == b.format;
}

// ---------------------------------------------------------------------------

namespace {

json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

complex complex_from(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw domain_error("config: complex amplitude must be a number or [re, im]");
}

template <class T>
void read(const json& j, const char* key, T& target) {
    if (j.contains(key)) target = j.at(key).get<T>();
}

} // namespace

json to_json(const ModelParams& p) {
    return {
        {"bath", {{"alpha", p.bath.alpha}, {"mu", p.bath.mu}, {"omega_c", p.bath.omega_c}}},
        {"correlation", {{"lambda", p.corr.lambda}, {"upsilon", p.corr.upsilon}}},
        {"qubit",
         {{"omega0", p.qubit.omega0}, {"ce", complex_json(p.qubit.ce)},
          {"cg", complex_json(p.qubit.cg)}}},
    };
}

json to_json(const TrappingSpec& s) {
    return {{"rel_tol", s.rel_tol}, {"abs_tol", s.abs_tol}, {"t_max", s.t_max},
            {"grid_n", s.grid_n}};
}

json to_json(const RunConfig& c) {
    return {
        {"model", to_json(c.model)},
        {"trapping", to_json(c.trapping)},
        {"quadrature", {{"abs_tol", c.quad.abs_tol}, {"max_depth", c.quad.max_depth}}},
        {"qsl_mode", std::string(to_string(c.qsl_mode))},
        {"output_path", c.output_path},
        {"format", std::string(to_string(c.format))},
    };
}

RunConfig config_from_json(const json& root) {
    const json& j = root.contains("config") ? root.at("config") : root;
    if (!j.is_object()) throw domain_error("config: expected a JSON object");
    RunConfig c;
    try {
        if (j.contains("model")) {
            const json& m = j.at("model");
            if (m.contains("bath")) {
                const json& b = m.at("bath");
                read(b, "alpha", c.model.bath.alpha);
                read(b, "mu", c.model.bath.mu);
                read(b, "omega_c", c.model.bath.omega_c);
            }
            if (m.contains("correlation")) {
                const json& k = m.at("correlation");
                read(k, "lambda", c.model.corr.lambda);
                read(k, "upsilon", c.model.corr.upsilon);
            }
            if (m.contains("qubit")) {
                const json& q = m.at("qubit");
                read(q, "omega0", c.model.qubit.omega0);
                if (q.contains("ce")) c.model.qubit.ce = complex_from(q.at("ce"));
                if (q.contains("cg")) c.model.qubit.cg = complex_from(q.at("cg"));
            }
        }
        if (j.contains("trapping")) {
            const json& t = j.at("trapping");
            read(t, "rel_tol", c.trapping.rel_tol);
            read(t, "abs_tol", c.trapping.abs_tol);
            read(t, "t_max", c.trapping.t_max);
            read(t, "grid_n", c.trapping.grid_n);
        }
        if (j.contains("quadrature")) {
            read(j.at("quadrature"), "abs_tol", c.quad.abs_tol);
            read(j.at("quadrature"), "max_depth", c.quad.max_depth);
        }
        if (j.contains("qsl_mode")) c.qsl_mode = parse_qsl_mode(j.at("qsl_mode").get<std::string>());
        read(j, "output_path", c.output_path);
        if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
    } catch (const json::exception& e) {
        throw domain_error(std::string("config: ") + e.what());
    }
    validate(c.model);
    validate(c.trapping);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("config: cannot open " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw domain_error("config: " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

// ---------------------------------------------------------------------------

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_field(fields[i]);
    }
    out << '\n';
}

namespace {

struct Columns {
    bool time = false;
    bool qsl = false;
    bool ect = false;
};

Columns columns_for(const ex::SweepResult& r) {
    Columns c;
    for (const auto& a : r.axes) c.time |= a.name == ex::Axis::t;
    c.qsl = r.outputs.qsl;
    for (const auto& row : r.rows) c.ect |= row.ect_margin.has_value();
    return c;
}

std::vector<std::string> header_for(const ex::SweepResult& r) {
    const auto cols = columns_for(r);
    std::vector<std::string> h;
    for (const auto& a : r.axes) h.emplace_back(ex::to_string(a.name));
    h.insert(h.end(), {"c_stationary", "l1_stationary"});
    if (cols.time) h.insert(h.end(), {"c_t", "l1_t"});
    if (cols.qsl) h.insert(h.end(), {"t_c", "qsl_ratio"});
    if (cols.ect) h.emplace_back("ect_margin");
    h.emplace_back("error_code");
    return h;
}

std::string cell(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

json axis_json(const ex::AxisSpec& a) {
    json j = {{"name", std::string(ex::to_string(a.name))}, {"lo", a.lo}, {"hi", a.hi}, {"n", a.n}};
    if (!a.points.empty()) j["points"] = a.points;
    return j;
}

json optimum_json(const ex::QslOptimum& o) {
    return {{"vars", std::string(ex::to_string(o.vars))},
            {"mu", o.mu},
            {"upsilon", o.upsilon},
            {"ratio", o.ratio},
            {"coarse_min", o.coarse_min},
            {"t_c", o.t_c},
            {"mode", std::string(to_string(o.mode))},
            {"omega0", o.omega0},
            {"trapping", to_json(o.trapping)}};
}

} // namespace

void write_sweep_csv(std::ostream& out, const ex::SweepResult& r) {
    const auto cols = columns_for(r);
    write_csv_row(out, header_for(r));
    for (const auto& row : r.rows) {
        std::vector<std::string> f;
        for (double x : row.coords) f.push_back(format_real(x));
        f.push_back(cell(row.c_stationary));
        f.push_back(cell(row.l1_stationary));
        if (cols.time) {
            f.push_back(cell(row.c_t));
            f.push_back(cell(row.l1_t));
        }
        if (cols.qsl) {
            f.push_back(cell(row.t_c));
            f.push_back(cell(row.qsl_ratio));
        }
        if (cols.ect) f.push_back(cell(row.ect_margin));
        f.push_back(row.error_code);
        write_csv_row(out, f);
    }
}

json sweep_manifest(const ex::SweepResult& r, const RunConfig& config, std::string_view command) {
    RunConfig echo = config;
    echo.model = r.manifest.base;
    echo.trapping = r.manifest.trapping;
    echo.qsl_mode = r.manifest.mode;
    echo.quad = r.manifest.quad;
    json axes = json::array();
    for (const auto& a : r.axes) axes.push_back(axis_json(a));
    std::size_t errors = 0;
    for (const auto& row : r.rows) errors += row.error_code.empty() ? 0 : 1;
    return {
        {"version", r.manifest.version},
        {"command", std::string(command)},
        {"config", to_json(echo)},
        {"axes", axes},
        {"outputs", {{"stationary", r.outputs.stationary}, {"qsl", r.outputs.qsl}}},
        {"columns", header_for(r)},
        {"rows", r.rows.size()},
        {"error_rows", errors},
        {"tolerances",
         {{"trapping", to_json(r.manifest.trapping)},
          {"quadrature", {{"abs_tol", r.manifest.quad.abs_tol},
                          {"max_depth", r.manifest.quad.max_depth}}}}},
        {"units", "times in 1/omega_c, entropies in bits"},
    };
}

json figure_manifest(const ex::FigureDataset& ds, const RunConfig& config) {
    json j = sweep_manifest(ds.data, config, "figure");
    j["figure"] = std::string(ex::to_string(ds.id));
    if (ds.ect_reference) j["ect_reference"] = *ds.ect_reference;
    if (!ds.ect.empty()) {
        json slices = json::array();
        for (const auto& s : ds.ect) {
            json intervals = json::array();
            for (const auto& [lo, hi] : s.enhanced) intervals.push_back({lo, hi});
            slices.push_back({{"lambda", s.lambda},
                              {"crossings", s.crossings},
                              {"enhanced", intervals},
                              {"enhanced_length", s.enhanced_length()}});
        }
        j["ect_boundary"] = slices;
    }
    if (!ds.optima.empty()) {
        json optima = json::array();
        for (const auto& o : ds.optima) optima.push_back(optimum_json(o));
        j["optima"] = optima;
    }
    return j;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& csv_path) {
    auto p = csv_path;
    p.replace_extension(".manifest.json");
    return p;
}

void write_table(const std::filesystem::path& csv_path, const ex::SweepResult& result,
                 const json& manifest) {
    if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw domain_error("cannot write " + csv_path.string());
        write_sweep_csv(out, result);
    }
    std::ofstream out(manifest_path_for(csv_path), std::ios::binary);
    if (!out) throw domain_error("cannot write " + manifest_path_for(csv_path).string());
    out << manifest.dump(2) << '\n';
}

} // namespace cohtrap::io
