// cli.cpp

#include "cohtrap/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "cohtrap/coherence.hpp"
#include "cohtrap/errors.hpp"
#include "cohtrap/experiments.hpp"
#include "cohtrap/io.hpp"
#include "cohtrap/qsl.hpp"
#include "cohtrap/version.hpp"

namespace cohtrap::cli {

namespace ex = experiments;
using nlohmann::json;

namespace {

struct CommonFlags {
    std::optional<std::string> config;
    std::optional<double> alpha, mu, omega_c, lambda, upsilon, omega0;
    std::vector<double> ce_cg;
    std::optional<double> rel_tol, abs_tol, t_max, quad_tol;
    std::optional<int> grid_n;
    std::optional<std::string> format;
    std::optional<std::string> mode;
    unsigned threads = 0;
};

io::RunConfig build_config(const CommonFlags& f) {
    io::RunConfig c = f.config ? io::load_config(*f.config) : io::RunConfig{};
    auto apply = [](const std::optional<double>& v, double& target) {
        if (v) target = *v;
    };
    apply(f.alpha, c.model.bath.alpha);
    apply(f.mu, c.model.bath.mu);
    apply(f.omega_c, c.model.bath.omega_c);
    apply(f.lambda, c.model.corr.lambda);
    apply(f.upsilon, c.model.corr.upsilon);
    apply(f.omega0, c.model.qubit.omega0);
    if (!f.ce_cg.empty()) {
        c.model.qubit.ce = {f.ce_cg.at(0), 0.0};
        c.model.qubit.cg = {f.ce_cg.at(1), 0.0};
    }
    apply(f.rel_tol, c.trapping.rel_tol);
    apply(f.abs_tol, c.trapping.abs_tol);
    apply(f.t_max, c.trapping.t_max);
    if (f.grid_n) c.trapping.grid_n = *f.grid_n;
    apply(f.quad_tol, c.quad.abs_tol);
    if (f.format) c.format = io::parse_format(*f.format);
    if (f.mode) c.qsl_mode = parse_qsl_mode(*f.mode);
    validate(c.model);
    validate(c.trapping);
    return c;
}

using Value = std::variant<double, std::string>;
using Record = std::vector<std::pair<std::string, Value>>;

void print_record(std::ostream& out, io::Format format, const Record& record) {
    if (format == io::Format::json) {
        json j = json::object();
        for (const auto& [key, value] : record) {
            std::visit([&, k = key](const auto& v) { j[k] = v; }, value);
        }
        out << j.dump(2) << '\n';
        return;
    }
    std::vector<std::string> header, row;
    for (const auto& [key, value] : record) {
        header.push_back(key);
        row.push_back(std::holds_alternative<double>(value) ? io::format_real(std::get<double>(value))
                                                            : std::get<std::string>(value));
    }
    io::write_csv_row(out, header);
    io::write_csv_row(out, row);
}

math::Bracket parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw domain_error("range: expected lo:hi, got '" + text + "'");
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::logic_error&) {
        throw domain_error("range: cannot parse '" + text + "'");
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pure-dephasing coherence trapping and quantum speed limits of a qubit "
                 "initially correlated with an Ohmic-like bath. Times are in units of 1/omega_c.",
                 "cohtrap"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    CommonFlags f;
    app.add_option("--config", f.config, "JSON config (or manifest); flags override it");
    app.add_option("--alpha", f.alpha, "coupling alpha > 0 (default 0.2)");
    app.add_option("--mu", f.mu, "Ohmicity mu > -1 (default 1.46)");
    app.add_option("--wc", f.omega_c, "cutoff omega_c > 0 (default 1)");
    app.add_option("--lambda", f.lambda, "correlation weight in [0, 1] (default 0)");
    app.add_option("--upsilon", f.upsilon, "coherent-state exponent > 0 (default 1.5)");
    app.add_option("--w0", f.omega0, "qubit splitting omega0 >= 0 (default 0)");
    app.add_option("--ce-cg", f.ce_cg, "real amplitudes ce cg (default 1/sqrt2 1/sqrt2)")
        ->expected(2);
    app.add_option("--rel-tol", f.rel_tol, "trapping band, relative part (default 1e-3)");
    app.add_option("--abs-tol", f.abs_tol, "trapping band, absolute part (default 1e-6)");
    app.add_option("--t-max", f.t_max, "trapping search window in 1/omega_c (default 50)");
    app.add_option("--grid-n", f.grid_n, "trapping search grid points (default 5000)");
    app.add_option("--quad-tol", f.quad_tol, "quadrature absolute tolerance (default 1e-9)");
    app.add_option("--format", f.format, "stdout format: csv|json (default csv)");
    app.add_option("--threads", f.threads, "worker threads for sweeps, 0 = auto");

    auto* eval = app.add_subcommand("eval", "dephasing factor and coherence at one time");
    double eval_t = 0.0;
    eval->add_option("--t", eval_t, "time")->required();

    auto* stationary = app.add_subcommand("stationary", "t -> inf coherence");
    auto* tc = app.add_subcommand("tc", "trapping time");

    auto* qsl = app.add_subcommand("qsl", "QSL ratio tau_QSL / t_c");
    qsl->add_option("--mode", f.mode, "paper|purity (default paper)");

    auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep written as CSV + manifest");
    std::vector<std::string> axis_texts;
    std::optional<std::string> sweep_out;
    std::vector<std::string> sweep_outputs{"stationary"};
    sweep_cmd->add_option("--axis", axis_texts, "name=lo:hi:n (one or two)")->required();
    sweep_cmd->add_option("--out", sweep_out, "CSV path (stdout when omitted)");
    sweep_cmd->add_option("--outputs", sweep_outputs, "stationary,qsl")->delimiter(',');
    sweep_cmd->add_option("--mode", f.mode, "QSL mode paper|purity");

    auto* optimize = app.add_subcommand("optimize", "optimize stationary coherence or QSL ratio");
    std::string target;
    std::string vars = "mu";
    std::optional<std::string> mu_range, upsilon_range;
    int coarse_n = 50;
    optimize->add_option("--target", target, "stationary|qsl")->required();
    optimize->add_option("--vars", vars, "mu|upsilon|joint (default mu)");
    optimize->add_option("--mu-range", mu_range, "lo:hi (default 0.1:4 or 0.5:4)");
    optimize->add_option("--upsilon-range", upsilon_range, "lo:hi (default 0.5:5)");
    optimize->add_option("--coarse-n", coarse_n, "coarse scan points per axis (default 50)");
    optimize->add_option("--mode", f.mode, "QSL mode paper|purity");

    auto* figure = app.add_subcommand("figure", "regenerate one figure dataset");
    std::string figure_id;
    std::string figure_out = ".";
    int resolution = 200;
    figure->add_option("id", figure_id, "fig1a..fig1d, fig2a, fig2b, fig3a..fig3c")->required();
    figure->add_option("--out", figure_out, "output directory (default .)");
    figure->add_option("--resolution", resolution, "points per continuous axis (default 200)");
    figure->add_option("--mode", f.mode, "QSL mode paper|purity");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const io::RunConfig config = build_config(f);
        const auto& params = config.model;

        if (eval->parsed()) {
            const DephasingModel model(params);
            const auto s = model.sample(eval_t);
            const auto c = coherence(model.state(eval_t));
            print_record(out, config.format,
                         {{"t", eval_t},
                          {"ups_re", s.ups.real()},
                          {"ups_im", s.ups.imag()},
                          {"ups_abs", std::abs(s.ups)},
                          {"dups_re", s.dups.real()},
                          {"dups_im", s.dups.imag()},
                          {"c_rel_entropy", c.rel_entropy},
                          {"c_l1", c.l1}});
        } else if (stationary->parsed()) {
            const auto c = stationary_coherence(params);
            print_record(out, config.format,
                         {{"ups_inf", stationary_magnitude(params)},
                          {"c_stationary", c.rel_entropy},
                          {"l1_stationary", c.l1}});
        } else if (tc->parsed()) {
            print_record(out, config.format, {{"t_c", trapping_time(params, config.trapping)}});
        } else if (qsl->parsed()) {
            const auto q = qsl_ratio(params, config.trapping, config.qsl_mode, config.quad);
            print_record(out, config.format,
                         {{"mode", std::string(to_string(q.mode))},
                          {"t_c", q.t_c},
                          {"numerator", q.numerator},
                          {"denominator", q.denominator},
                          {"ratio", q.ratio}});
        } else if (sweep_cmd->parsed()) {
            std::vector<ex::AxisSpec> axes;
            for (const auto& text : axis_texts) axes.push_back(ex::parse_axis(text));
            ex::SweepOutputs outputs{false, false};
            for (const auto& o : sweep_outputs) {
                if (o == "stationary") outputs.stationary = true;
                else if (o == "qsl") outputs.qsl = true;
                else throw domain_error("unknown sweep output '" + o + "' (expected stationary|qsl)");
            }
            ex::SweepOptions options{config.trapping, config.qsl_mode, config.quad, f.threads};
            const auto result = ex::sweep(params, axes, outputs, options);
            const std::string path = sweep_out ? *sweep_out : config.output_path;
            if (path.empty()) {
                io::write_sweep_csv(out, result);
            } else {
                io::RunConfig echo = config;
                echo.output_path = path;
                io::write_table(path, result, io::sweep_manifest(result, echo, "sweep"));
                err << "wrote " << result.rows.size() << " rows to " << path << '\n';
            }
        } else if (optimize->parsed()) {
            if (target == "stationary") {
                if (vars != "mu") throw domain_error("optimize stationary supports --vars mu only");
                const auto bracket = mu_range ? parse_range(*mu_range) : math::Bracket(0.1, 4.0);
                const auto o = ex::optimize_stationary_mu(params, bracket);
                print_record(out, config.format, {{"mu_star", o.mu_star}, {"c_star", o.c_star}});
            } else if (target == "qsl") {
                ex::QslBox box;
                if (mu_range) box.mu = parse_range(*mu_range);
                if (upsilon_range) box.upsilon = parse_range(*upsilon_range);
                ex::QslOptimizeOptions options;
                options.coarse_n = coarse_n;
                options.sweep = {config.trapping, config.qsl_mode, config.quad, f.threads};
                const auto o = ex::optimize_qsl(params, ex::parse_qsl_vars(vars), box, options);
                print_record(out, config.format,
                             {{"vars", std::string(ex::to_string(o.vars))},
                              {"mu", o.mu},
                              {"upsilon", o.upsilon},
                              {"ratio", o.ratio},
                              {"coarse_min", o.coarse_min},
                              {"t_c", o.t_c},
                              {"mode", std::string(to_string(o.mode))},
                              {"omega0", o.omega0}});
            } else {
                throw domain_error("unknown optimize target '" + target +
                                   "' (expected stationary|qsl)");
            }
        } else if (figure->parsed()) {
            const auto id = ex::parse_figure_id(figure_id);
            ex::FigureOptions options;
            options.resolution = resolution;
            options.threads = f.threads;
            options.mode = config.qsl_mode;
            options.omega0 = params.qubit.omega0;
            const auto ds = ex::figure_dataset(id, options);
            const auto path =
                std::filesystem::path(figure_out) / (std::string(ex::to_string(id)) + ".csv");
            io::RunConfig echo = config;
            echo.output_path = path.string();
            io::write_table(path, ds.data, io::figure_manifest(ds, echo));
            err << "wrote " << ds.data.rows.size() << " rows to " << path.string() << '\n';
        }
    } catch (const convergence_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace cohtrap::cli
