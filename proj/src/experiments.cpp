// experiments.cpp

#include "cohtrap/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "cohtrap/coherence.hpp"
#include "cohtrap/errors.hpp"
#include "cohtrap/parallel.hpp"
#include "cohtrap/version.hpp"

namespace cohtrap::experiments {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) { return std::to_string(v); }

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw domain_error("axis: cannot parse " + std::string(what) + " '" + std::string(text) +
                           "'");
    }
    return value;
}

void set_axis_value(ModelParams& params, Axis axis, double value) {
    switch (axis) {
    case Axis::alpha: params.bath.alpha = value; break;
    case Axis::mu: params.bath.mu = value; break;
    case Axis::lambda: params.corr.lambda = value; break;
    case Axis::upsilon: params.corr.upsilon = value; break;
    case Axis::omega0: params.qubit.omega0 = value; break;
    case Axis::t: break;
    }
}

// Runs f and maps the library's exception types to sweep error codes.
template <class F>
std::string guarded(F&& f) {
    try {
        f();
    } catch (const no_trapping_error&) {
        return "no_trapping";
    } catch (const degenerate_error&) {
        return "degenerate";
    } catch (const convergence_error&) {
        return "no_convergence";
    } catch (const domain_error&) {
        return "domain";
    }
    return {};
}

} // namespace

std::string_view to_string(Axis axis) {
    switch (axis) {
    case Axis::alpha: return "alpha";
    case Axis::mu: return "mu";
    case Axis::lambda: return "lambda";
    case Axis::upsilon: return "upsilon";
    case Axis::omega0: return "omega0";
    case Axis::t: return "t";
    }
    return "unknown";
}

Axis parse_axis_name(std::string_view name) {
    for (Axis a : {Axis::alpha, Axis::mu, Axis::lambda, Axis::upsilon, Axis::omega0, Axis::t}) {
        if (name == to_string(a)) return a;
    }
    throw domain_error("unknown axis '" + std::string(name) +
                       "' (expected alpha|mu|lambda|upsilon|omega0|t)");
}

AxisSpec AxisSpec::uniform(Axis name, double lo, double hi, int n) {
    AxisSpec axis{name, lo, hi, n, {}};
    validate(axis);
    return axis;
}

AxisSpec AxisSpec::list(Axis name, std::vector<double> points) {
    if (points.empty()) throw domain_error("axis: empty point list");
    AxisSpec axis{name, *std::min_element(points.begin(), points.end()),
                  *std::max_element(points.begin(), points.end()),
                  static_cast<int>(points.size()), std::move(points)};
    validate(axis);
    return axis;
}

std::vector<double> AxisSpec::values() const {
    if (!points.empty()) return points;
    std::vector<double> v(static_cast<std::size_t>(n));
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) v[i] = (i + 1 == n) ? hi : lo + h * i;
    return v;
}

void validate(const AxisSpec& axis) {
    const std::string name(to_string(axis.name));
    if (!std::isfinite(axis.lo) || !std::isfinite(axis.hi))
        throw domain_error("axis " + name + ": bounds must be finite");
    if (axis.points.empty()) {
        if (!(axis.lo < axis.hi)) throw domain_error("axis " + name + ": need lo < hi");
        if (axis.n < 2) throw domain_error("axis " + name + ": need n >= 2");
    } else if (static_cast<int>(axis.points.size()) != axis.n) {
        throw domain_error("axis " + name + ": n does not match the point list");
    }
    bool ok = true;
    switch (axis.name) {
    case Axis::alpha: ok = axis.lo > 0.0; break;
    case Axis::mu: ok = axis.lo > -1.0; break;
    case Axis::lambda: ok = axis.lo >= 0.0 && axis.hi <= 1.0; break;
    case Axis::upsilon: ok = axis.lo > 0.0; break;
    case Axis::omega0: ok = axis.lo >= 0.0; break;
    case Axis::t: ok = axis.lo >= 0.0; break;
    }
    if (!ok) {
        throw domain_error("axis " + name + ": range [" + num(axis.lo) + ", " + num(axis.hi) +
                           "] leaves the parameter domain");
    }
}

AxisSpec parse_axis(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
        throw domain_error("axis: expected name=lo:hi:n, got '" + std::string(text) + "'");
    }
    const Axis name = parse_axis_name(text.substr(0, eq));
    const auto rest = text.substr(eq + 1);
    const auto c1 = rest.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
        throw domain_error("axis: expected name=lo:hi:n, got '" + std::string(text) + "'");
    }
    const double lo = parse_double(rest.substr(0, c1), "lo");
    const double hi = parse_double(rest.substr(c1 + 1, c2 - c1 - 1), "hi");
    const double n = parse_double(rest.substr(c2 + 1), "n");
    if (n != std::floor(n) || n > 1e7) throw domain_error("axis: n must be an integer");
    return AxisSpec::uniform(name, lo, hi, static_cast<int>(n));
}

// ---------------------------------------------------------------------------

SweepResult sweep(const ModelParams& base, const std::vector<AxisSpec>& axes,
                  const SweepOutputs& outputs, const SweepOptions& options) {
    if (axes.empty() || axes.size() > 2) throw domain_error("sweep: need one or two axes");
    if (!outputs.stationary && !outputs.qsl) throw domain_error("sweep: no outputs requested");
    std::set<Axis> seen;
    for (const auto& axis : axes) {
        validate(axis);
        if (!seen.insert(axis.name).second)
            throw domain_error("sweep: axis " + std::string(to_string(axis.name)) + " repeated");
    }
    validate(options.trapping);
    if (outputs.qsl) {
        const auto mu_axis = std::find_if(axes.begin(), axes.end(),
                                          [](const AxisSpec& a) { return a.name == Axis::mu; });
        const double mu_min = mu_axis == axes.end() ? base.bath.mu : mu_axis->lo;
        if (!(mu_min > 0.0)) throw domain_error("sweep: qsl output requires mu > 0 everywhere");
    }
    const bool has_time = seen.contains(Axis::t);

    std::vector<std::vector<double>> grids;
    std::size_t total = 1;
    for (const auto& axis : axes) {
        grids.push_back(axis.values());
        total *= grids.back().size();
    }

    SweepResult result;
    result.axes = axes;
    result.outputs = outputs;
    result.manifest = {base, options.trapping, options.mode, options.quad, std::string(kVersion)};
    result.rows.resize(total);

    parallel_for(total, options.threads, [&](std::size_t k) {
        SweepRow& row = result.rows[k];
        row.coords.resize(axes.size());
        std::size_t rem = k;
        for (std::size_t a = axes.size(); a-- > 0;) {
            row.coords[a] = grids[a][rem % grids[a].size()];
            rem /= grids[a].size();
        }
        ModelParams params = base;
        double t = 0.0;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            set_axis_value(params, axes[a].name, row.coords[a]);
            if (axes[a].name == Axis::t) t = row.coords[a];
        }

        row.error_code = guarded([&] {
            const DephasingModel model(params);
            if (outputs.stationary) {
                const auto c = coherence(model.stationary_state());
                row.c_stationary = c.rel_entropy;
                row.l1_stationary = c.l1;
            }
            if (has_time) {
                const auto c = coherence(model.state(t));
                row.c_t = c.rel_entropy;
                row.l1_t = c.l1;
            }
        });
        if (outputs.qsl && row.error_code.empty()) {
            row.error_code = guarded([&] {
                const auto q = qsl_ratio(params, options.trapping, options.mode, options.quad);
                row.t_c = q.t_c;
                row.qsl_ratio = q.ratio;
            });
        }
    });
    return result;
}

// ---------------------------------------------------------------------------

double EctSlice::enhanced_length() const {
    double total = 0.0;
    for (const auto& [lo, hi] : enhanced) total += hi - lo;
    return total;
}

double uncorrelated_stationary_coherence(double alpha, double mu, double omega_c) {
    ModelParams params;
    params.bath = {alpha, mu, omega_c};
    params.corr.lambda = 0.0;
    return stationary_coherence(params).rel_entropy;
}

std::vector<EctSlice> ect_boundary(double alpha, double mu, const AxisSpec& lambda_grid,
                                   const EctOptions& options) {
    if (!(mu > 0.0)) throw domain_error("ect_boundary: requires mu > 0");
    if (lambda_grid.name != Axis::lambda) throw domain_error("ect_boundary: need a lambda axis");
    validate(lambda_grid);
    if (options.scan_n < 2 || !(options.upsilon_hi > 0.0) || !(options.bisect_tol > 0.0))
        throw domain_error("ect_boundary: invalid scan options");

    const double reference = uncorrelated_stationary_coherence(alpha, mu, options.omega_c);
    std::vector<EctSlice> slices;
    for (double lambda : lambda_grid.values()) {
        ModelParams params;
        params.bath = {alpha, mu, options.omega_c};
        params.corr.lambda = lambda;
        auto margin = [&](double upsilon) {
            params.corr.upsilon = upsilon;
            return stationary_coherence(params).rel_entropy - reference;
        };

        EctSlice slice;
        slice.lambda = lambda;
        const double h = options.upsilon_hi / options.scan_n;
        double prev_u = h;
        bool prev_pos = margin(prev_u) > 0.0;
        double open = prev_pos ? prev_u : 0.0;
        for (int i = 2; i <= options.scan_n; ++i) {
            const double u = i == options.scan_n ? options.upsilon_hi : h * i;
            const bool pos = margin(u) > 0.0;
            if (pos != prev_pos) {
                double a = prev_u;
                double b = u;
                while (b - a > options.bisect_tol) {
                    const double m = 0.5 * (a + b);
                    if ((margin(m) > 0.0) == prev_pos) a = m; else b = m;
                }
                const double crossing = 0.5 * (a + b);
                slice.crossings.push_back(crossing);
                if (pos) open = crossing;
                else slice.enhanced.emplace_back(open, crossing);
            }
            prev_u = u;
            prev_pos = pos;
        }
        if (prev_pos) slice.enhanced.emplace_back(open, options.upsilon_hi);
        slices.push_back(std::move(slice));
    }
    return slices;
}

// ---------------------------------------------------------------------------

namespace {

struct ScanMinimum {
    math::ScalarMinimum best;
    double coarse_min = kInf;
};

// Coarse scan, then golden section between the neighbours of the best point.
ScanMinimum scan_then_golden(const math::ScalarObjective& f, const math::Bracket& bracket,
                             int coarse_n, double tol, unsigned threads) {
    if (coarse_n < 3) throw domain_error("optimizer: coarse scan needs at least 3 points");
    const AxisSpec grid{Axis::mu, bracket.lo, bracket.hi, coarse_n, {}};
    const auto xs = grid.values();
    std::vector<double> fs(xs.size());
    parallel_for(xs.size(), threads, [&](std::size_t i) {
        const double v = f(xs[i]);
        fs[i] = std::isfinite(v) ? v : kInf;
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < fs.size(); ++i) {
        if (fs[i] < fs[best]) best = i;
    }
    if (!std::isfinite(fs[best])) {
        throw convergence_error("optimizer: objective is non-finite on the whole coarse scan");
    }
    ScanMinimum out;
    out.coarse_min = fs[best];
    const double lo = xs[best == 0 ? 0 : best - 1];
    const double hi = xs[std::min(best + 1, xs.size() - 1)];
    out.best = math::minimize_scalar(f, math::Bracket(lo, hi), tol);
    if (!(out.best.min <= fs[best])) out.best = {xs[best], fs[best]};
    return out;
}

} // namespace

StationaryOptimum optimize_stationary_mu(const ModelParams& params, const math::Bracket& bracket,
                                         int coarse_n, double tol) {
    validate(params);
    if (!(bracket.lo > 0.0) || bracket.hi > 4.0)
        throw domain_error("optimize_stationary_mu: bracket must lie in (0, 4]");
    auto objective = [&](double mu) {
        ModelParams p = params;
        p.bath.mu = mu;
        return -stationary_coherence(p).rel_entropy;
    };
    const auto found = scan_then_golden(objective, bracket, coarse_n, tol, 1);
    return {found.best.argmin, -found.best.min};
}

std::string_view to_string(QslVars vars) {
    switch (vars) {
    case QslVars::mu: return "mu";
    case QslVars::upsilon: return "upsilon";
    case QslVars::joint: return "joint";
    }
    return "unknown";
}

QslVars parse_qsl_vars(std::string_view text) {
    if (text == "mu") return QslVars::mu;
    if (text == "upsilon") return QslVars::upsilon;
    if (text == "joint") return QslVars::joint;
    throw domain_error("unknown optimization variables '" + std::string(text) +
                       "' (expected mu|upsilon|joint)");
}

QslOptimum optimize_qsl(const ModelParams& params, QslVars vars, const QslBox& box,
                        const QslOptimizeOptions& options) {
    validate(options.sweep.trapping);
    if (vars != QslVars::upsilon && !(box.mu.lo > 0.0))
        throw domain_error("optimize_qsl: mu range must be super-Ohmic (mu > 0)");
    if (vars == QslVars::upsilon && !(params.bath.mu > 0.0))
        throw domain_error("optimize_qsl: mu must be super-Ohmic (mu > 0)");
    if (vars != QslVars::mu && !(box.upsilon.lo > 0.0))
        throw domain_error("optimize_qsl: upsilon range must be positive");

    const auto& sw = options.sweep;
    auto ratio_at = [&](double mu, double upsilon) {
        ModelParams p = params;
        p.bath.mu = mu;
        p.corr.upsilon = upsilon;
        try {
            return qsl_ratio(p, sw.trapping, sw.mode, sw.quad).ratio;
        } catch (const domain_error&) {
            return kInf;
        } catch (const convergence_error&) {
            return kInf;
        }
    };

    QslOptimum out;
    out.vars = vars;
    out.trapping = sw.trapping;
    out.mode = sw.mode;
    out.omega0 = params.qubit.omega0;
    out.mu = params.bath.mu;
    out.upsilon = params.corr.upsilon;

    switch (vars) {
    case QslVars::mu: {
        const auto found = scan_then_golden([&](double mu) { return ratio_at(mu, out.upsilon); },
                                            box.mu, options.coarse_n, options.tol, sw.threads);
        out.mu = found.best.argmin;
        out.ratio = found.best.min;
        out.coarse_min = found.coarse_min;
        break;
    }
    case QslVars::upsilon: {
        const auto found = scan_then_golden([&](double ups) { return ratio_at(out.mu, ups); },
                                            box.upsilon, options.coarse_n, options.tol,
                                            sw.threads);
        out.upsilon = found.best.argmin;
        out.ratio = found.best.min;
        out.coarse_min = found.coarse_min;
        break;
    }
    case QslVars::joint: {
        math::Minimize2dOptions opt;
        opt.coarse_n = options.coarse_n;
        opt.tol = options.tol;
        opt.threads = sw.threads;
        const auto found = math::minimize_2d(
            [&](double upsilon, double mu) { return ratio_at(mu, upsilon); }, box.upsilon, box.mu,
            opt);
        out.upsilon = found.arg.first;
        out.mu = found.arg.second;
        out.ratio = found.min;
        out.coarse_min = found.coarse_min;
        break;
    }
    }
    ModelParams at = params;
    at.bath.mu = out.mu;
    at.corr.upsilon = out.upsilon;
    out.t_c = trapping_time(at, sw.trapping);
    return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(FigureId id) {
    switch (id) {
    case FigureId::fig1a: return "fig1a";
    case FigureId::fig1b: return "fig1b";
    case FigureId::fig1c: return "fig1c";
    case FigureId::fig1d: return "fig1d";
    case FigureId::fig2a: return "fig2a";
    case FigureId::fig2b: return "fig2b";
    case FigureId::fig3a: return "fig3a";
    case FigureId::fig3b: return "fig3b";
    case FigureId::fig3c: return "fig3c";
    }
    return "unknown";
}

std::vector<FigureId> all_figures() {
    return {FigureId::fig1a, FigureId::fig1b, FigureId::fig1c, FigureId::fig1d, FigureId::fig2a,
            FigureId::fig2b, FigureId::fig3a, FigureId::fig3b, FigureId::fig3c};
}

FigureId parse_figure_id(std::string_view text) {
    for (FigureId id : all_figures()) {
        if (text == to_string(id)) return id;
    }
    throw std::invalid_argument("unknown figure id '" + std::string(text) +
                                "' (expected fig1a..fig1d, fig2a, fig2b, fig3a..fig3c)");
}

namespace {

// Shared by every figure: omega_c = 1, equal weights.
ModelParams figure_base(double alpha, double mu, double lambda, double upsilon, double omega0) {
    ModelParams p;
    p.bath = {alpha, mu, 1.0};
    p.corr = {lambda, upsilon};
    p.qubit.omega0 = omega0;
    return p;
}

void attach_ect_margin(FigureDataset& ds, double reference) {
    ds.ect_reference = reference;
    for (auto& row : ds.data.rows) {
        if (row.c_stationary) row.ect_margin = *row.c_stationary - reference;
    }
}

} // namespace

FigureDataset figure_dataset(FigureId id, const FigureOptions& options) {
    if (options.resolution < 3) throw domain_error("figure: resolution must be at least 3");
    const int n = options.resolution;
    const double w0 = options.omega0;

    SweepOptions so;
    so.threads = options.threads;
    so.mode = options.mode;
    SweepOutputs stationary_only{true, false};
    SweepOutputs with_qsl{true, true};

    QslOptimizeOptions qo;
    qo.sweep = so;

    FigureDataset ds;
    ds.id = id;
    switch (id) {
    case FigureId::fig1a:
    case FigureId::fig1b: {
        const double lambda = id == FigureId::fig1a ? 0.0 : 1.0;
        ds.data = sweep(figure_base(0.2, 1.46, lambda, 1.5, w0),
                        {AxisSpec::uniform(Axis::mu, 0.1, 4.0, n),
                         AxisSpec::uniform(Axis::alpha, 0.01, 1.0, n)},
                        stationary_only, so);
        break;
    }
    case FigureId::fig1c:
        ds.data = sweep(figure_base(0.2, 1.46, 0.0, 1.5, w0),
                        {AxisSpec::list(Axis::lambda, {0.0, 0.3, 0.6, 1.0}),
                         AxisSpec::uniform(Axis::mu, 0.1, 4.0, n)},
                        stationary_only, so);
        break;
    case FigureId::fig1d:
        ds.data = sweep(figure_base(0.2, 1.46, 1.0, 1.5, w0),
                        {AxisSpec::list(Axis::alpha, {0.05, 0.1, 0.2, 0.4, 0.8}),
                         AxisSpec::uniform(Axis::mu, 0.1, 4.0, n)},
                        stationary_only, so);
        break;
    case FigureId::fig2a:
    case FigureId::fig2b: {
        const double upsilon_hi = 6.0;
        const auto lambda_axis = id == FigureId::fig2a
                                     ? AxisSpec::uniform(Axis::lambda, 0.0, 1.0, n)
                                     : AxisSpec::list(Axis::lambda, {0.1, 0.3, 0.6, 0.9});
        ds.data = sweep(figure_base(0.2, 1.46, 0.0, 1.5, w0),
                        {lambda_axis, AxisSpec::uniform(Axis::upsilon, upsilon_hi / n,
                                                        upsilon_hi, n)},
                        stationary_only, so);
        attach_ect_margin(ds, uncorrelated_stationary_coherence(0.2, 1.46));
        const auto ect_lambdas = id == FigureId::fig2a
                                     ? AxisSpec::uniform(Axis::lambda, 0.0, 1.0, 11)
                                     : lambda_axis;
        ds.ect = ect_boundary(0.2, 1.46, ect_lambdas);
        break;
    }
    case FigureId::fig3a: {
        const std::vector<double> lambdas{0.0, 0.3, 0.6, 0.9};
        const auto base = figure_base(0.2, 2.0, 0.0, 2.0, w0);
        ds.data = sweep(base, {AxisSpec::list(Axis::lambda, lambdas),
                               AxisSpec::uniform(Axis::mu, 0.5, 4.0, n)},
                        with_qsl, so);
        for (double lambda : lambdas) {
            ModelParams p = base;
            p.corr.lambda = lambda;
            ds.optima.push_back(optimize_qsl(p, QslVars::mu, {}, qo));
        }
        break;
    }
    case FigureId::fig3b: {
        // mu = 1.46 settles slowly (the tail decays like t^-mu); widen the
        // window and keep the grid spacing of the default spec.
        so.trapping.t_max = 200.0;
        so.trapping.grid_n = 20000;
        qo.sweep = so;
        const std::vector<double> lambdas{0.1, 0.3, 0.6, 0.9};
        const auto base = figure_base(0.2, 1.46, 0.0, 2.0, w0);
        ds.data = sweep(base, {AxisSpec::list(Axis::lambda, lambdas),
                               AxisSpec::uniform(Axis::upsilon, 0.5, 5.0, n)},
                        with_qsl, so);
        for (double lambda : lambdas) {
            ModelParams p = base;
            p.corr.lambda = lambda;
            ds.optima.push_back(optimize_qsl(p, QslVars::upsilon, {}, qo));
        }
        break;
    }
    case FigureId::fig3c: {
        const auto base = figure_base(0.2, 3.1, 0.5, 3.65, w0);
        ds.data = sweep(base, {AxisSpec::uniform(Axis::upsilon, 0.5, 5.0, n),
                               AxisSpec::uniform(Axis::mu, 0.5, 4.0, n)},
                        with_qsl, so);
        ds.optima.push_back(optimize_qsl(base, QslVars::joint, {}, qo));
        break;
    }
    }
    return ds;
}

} // namespace cohtrap::experiments
