// experiments.hpp: parameter sweeps, ECT boundary extraction and optimizers
// that regenerate the stationary-coherence and QSL figure data

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohtrap/dephasing.hpp"
#include "cohtrap/math/optimize.hpp"
#include "cohtrap/math/quadrature.hpp"
#include "cohtrap/qsl.hpp"

namespace cohtrap::experiments {

enum class Axis { alpha, mu, lambda, upsilon, omega0, t };

std::string_view to_string(Axis axis);
Axis parse_axis_name(std::string_view name);

/// Grid along one parameter. Uniform lo..hi with n points unless an explicit
/// point list is given (figure series such as lambda in {0, 0.3, 0.6, 1}).
struct AxisSpec {
    Axis name = Axis::mu;
    double lo = 0.0;
    double hi = 1.0;
    int n = 2;
    std::vector<double> points;

    static AxisSpec uniform(Axis name, double lo, double hi, int n);
    static AxisSpec list(Axis name, std::vector<double> points);

    std::vector<double> values() const;

    bool operator==(const AxisSpec&) const = default;
};


/// Throws domain_error when the grid is malformed or leaves the parameter's
/// domain (alpha > 0, mu > -1, lambda in [0, 1], upsilon > 0, omega0 >= 0,
/// t >= 0).
void validate(const AxisSpec& axis);

/// "mu=0.1:4:40" -> AxisSpec. Throws domain_error on malformed text.
AxisSpec parse_axis(std::string_view text);

struct SweepOutputs {
    bool stationary = true;
    bool qsl = false;
};

struct SweepOptions {
    TrappingSpec trapping;
    QslMode mode = QslMode::paper_literal;
    math::QuadratureSpec quad;
    unsigned threads = 1;  // 0 = hardware concurrency
};

struct SweepRow {
    std::vector<double> coords;  // one per axis, in axis order
    std::optional<double> c_stationary;
    std::optional<double> l1_stationary;
    std::optional<double> c_t;   // only with a t axis
    std::optional<double> l1_t;
    std::optional<double> t_c;
    std::optional<double> qsl_ratio;
    std::optional<double> ect_margin;  // c_stationary - C_inf(lambda = 0), ECT figures only
    std::string error_code;      // empty when the row evaluated cleanly
};

struct Manifest {
    ModelParams base;
    TrappingSpec trapping;
    QslMode mode = QslMode::paper_literal;
    math::QuadratureSpec quad;
    std::string version;
};

struct SweepResult {
    std::vector<AxisSpec> axes;
    SweepOutputs outputs;
    std::vector<SweepRow> rows;  // lexicographic in axis indices, first axis outermost
    Manifest manifest;
};

/// Evaluates the requested outputs at every grid point. Row errors are
/// recorded as error codes ("no_trapping", "no_convergence", "degenerate",
/// "domain") and never abort the sweep. Results do not depend on the
/// thread count.
SweepResult sweep(const ModelParams& base, const std::vector<AxisSpec>& axes,
                  const SweepOutputs& outputs = {}, const SweepOptions& options = {});

// ---------------------------------------------------------------------------

struct EctOptions {
    double upsilon_hi = 6.0;
    int scan_n = 600;         // scan points on (0, upsilon_hi]
    double bisect_tol = 1e-4;
    double omega_c = 1.0;
};

/// Stationary-coherence enhancement over the uncorrelated state along the
/// upsilon axis at one lambda.
struct EctSlice {
    double lambda = 0.0;
    std::vector<double> crossings;                        // sign changes of C(lambda) - C(0)
    std::vector<std::pair<double, double>> enhanced;      // upsilon intervals with C(lambda) > C(0)

    double enhanced_length() const;
};

/// Reference value C_inf(lambda = 0) for the given bath.
double uncorrelated_stationary_coherence(double alpha, double mu, double omega_c = 1.0);

std::vector<EctSlice> ect_boundary(double alpha, double mu, const AxisSpec& lambda_grid,
                                   const EctOptions& options = {});

// ---------------------------------------------------------------------------

struct StationaryOptimum {
    double mu_star = 0.0;
    double c_star = 0.0;
};

/// Maximizes C_inf over mu with the other parameters fixed: a coarse scan
/// picks the neighbourhood, golden section refines it.
StationaryOptimum optimize_stationary_mu(const ModelParams& params, const math::Bracket& bracket,
                                         int coarse_n = 64, double tol = 1e-6);

enum class QslVars { mu, upsilon, joint };

std::string_view to_string(QslVars vars);
QslVars parse_qsl_vars(std::string_view text);

struct QslBox {
    math::Bracket mu{0.5, 4.0};
    math::Bracket upsilon{0.5, 5.0};
};

struct QslOptimizeOptions {
    int coarse_n = 50;
    double tol = 1e-4;
    SweepOptions sweep;  // trapping, mode, quadrature, threads
};

struct QslOptimum {
    QslVars vars = QslVars::joint;
    double mu = 0.0;
    double upsilon = 0.0;
    double ratio = 0.0;
    double coarse_min = 0.0;   // best value seen on the coarse scan
    double t_c = 0.0;
    TrappingSpec trapping;
    QslMode mode = QslMode::paper_literal;
    double omega0 = 0.0;
};

/// Minimizes the QSL ratio over mu, upsilon, or both. Points without
/// trapping (or whose band never settles) count as +inf.
QslOptimum optimize_qsl(const ModelParams& params, QslVars vars, const QslBox& box = {},
                        const QslOptimizeOptions& options = {});

// ---------------------------------------------------------------------------

enum class FigureId { fig1a, fig1b, fig1c, fig1d, fig2a, fig2b, fig3a, fig3b, fig3c };

std::string_view to_string(FigureId id);
FigureId parse_figure_id(std::string_view text);  // throws std::invalid_argument
std::vector<FigureId> all_figures();

struct FigureOptions {
    int resolution = 200;  // points per continuous axis
    unsigned threads = 0;
    QslMode mode = QslMode::paper_literal;
    double omega0 = 0.0;
};

struct FigureDataset {
    FigureId id = FigureId::fig1a;
    SweepResult data;
    std::optional<double> ect_reference;  // C_inf(lambda = 0), fig2a/fig2b
    std::vector<EctSlice> ect;            // fig2a/fig2b
    std::vector<QslOptimum> optima;       // fig3a/fig3b (one per lambda), fig3c (joint)
};

/// Canonical sweep for one figure with its fixed parameters.
FigureDataset figure_dataset(FigureId id, const FigureOptions& options = {});

} // namespace cohtrap::experiments
