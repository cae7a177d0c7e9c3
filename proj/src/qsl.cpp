// qsl.cpp

#include "cohtrap/qsl.hpp"

#include <cmath>
#include <string>

#include "cohtrap/errors.hpp"

namespace cohtrap {

void validate(const TrappingSpec& spec) {
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) || !(spec.t_max > 0.0) ||
        !std::isfinite(spec.t_max)) {
        throw domain_error("trapping: rel_tol, abs_tol and t_max must be positive");
    }
    if (spec.grid_n < 100) {
        throw domain_error("trapping: grid_n must be at least 100, got " +
                           std::to_string(spec.grid_n));
    }
}

std::string_view to_string(QslMode mode) {
    switch (mode) {
    case QslMode::paper_literal: return "paper_literal";
    case QslMode::relative_purity: return "relative_purity";
    }
    return "unknown";
}

QslMode parse_qsl_mode(std::string_view text) {
    if (text == "paper" || text == "paper_literal") return QslMode::paper_literal;
    if (text == "purity" || text == "relative_purity") return QslMode::relative_purity;
    throw domain_error("unknown QSL mode '" + std::string(text) + "' (expected paper|purity)");
}

namespace {

double trapping_time(const DephasingModel& model, const TrappingSpec& spec) {
    validate(spec);
    const auto& params = model.params();
    if (!(params.bath.mu > 0.0)) {
        throw no_trapping_error("trapping_time: no coherence trapping for mu = " +
                                std::to_string(params.bath.mu) + " <= 0");
    }
    const double target = model.stationary_magnitude();
    const double band = spec.abs_tol + spec.rel_tol * target;
    const double t_end = spec.t_max / params.bath.omega_c;
    const int n = spec.grid_n;
    const double h = t_end / (n - 1);
    auto grid = [&](int i) { return i + 1 == n ? t_end : h * i; };

    // Walk backwards; the answer is just after the last violation.
    int first_settled = n;
    for (int i = n - 1; i >= 0; --i) {
        if (std::abs(std::abs(model.factor(grid(i))) - target) > band) break;
        first_settled = i;
    }
    if (first_settled == n) {
        throw convergence_error("trapping_time: |Y(t)| has not settled within the band by t_max = " +
                                std::to_string(t_end));
    }
    return grid(std::max(first_settled, 1));
}

// B / |ce cg*| for equal-weight states reduces to 2B.
QubitState equal_weight_state(complex ups) { return {0.5, 0.5, 0.5 * ups}; }

double numerator_for(QslMode mode, complex ups0, complex ups_tc) {
    switch (mode) {
    case QslMode::paper_literal: return std::abs(ups0) * std::abs(ups_tc - ups0);
    case QslMode::relative_purity:
        return 2.0 * relative_purity_metric(equal_weight_state(ups0), equal_weight_state(ups_tc));
    }
    return 0.0;
}

} // namespace

double trapping_time(const ModelParams& params, const TrappingSpec& spec) {
    return trapping_time(DephasingModel(params), spec);
}

double relative_purity_metric(const QubitState& rho0, const QubitState& rho_tau) {
    const double overlap = rho0.rho_ee * rho_tau.rho_ee + rho0.rho_gg * rho_tau.rho_gg +
                           2.0 * (rho0.rho_eg * std::conj(rho_tau.rho_eg)).real();
    const double purity =
        rho0.rho_ee * rho0.rho_ee + rho0.rho_gg * rho0.rho_gg + 2.0 * std::norm(rho0.rho_eg);
    return std::abs(overlap - purity);
}

QslResult qsl_ratio_for_trajectory(const std::function<complex(double)>& ups,
                                   const std::function<complex(double)>& dups, double t_c,
                                   QslMode mode, const math::QuadratureSpec& quad) {
    if (!(t_c > 0.0)) throw domain_error("qsl_ratio: t_c must be positive");
    QslResult result;
    result.t_c = t_c;
    result.mode = mode;
    result.numerator = numerator_for(mode, ups(0.0), ups(t_c));
    result.denominator = math::integrate([&](double t) { return std::abs(dups(t)); }, 0.0, t_c, quad);
    if (!(result.denominator > 0.0)) {
        throw degenerate_error("qsl_ratio: Y is constant on [0, t_c], path length is zero");
    }
    result.ratio = result.numerator / result.denominator;
    return result;
}

QslResult qsl_ratio(const ModelParams& params, const TrappingSpec& spec, QslMode mode,
                    const math::QuadratureSpec& quad) {
    const DephasingModel model(params);
    constexpr double kWeightTolerance = 1e-12;
    if (std::abs(std::norm(params.qubit.ce) - 0.5) > kWeightTolerance ||
        std::abs(std::norm(params.qubit.cg) - 0.5) > kWeightTolerance) {
        throw domain_error("qsl_ratio: requires equal weights |ce|^2 = |cg|^2 = 1/2");
    }
    const double t_c = trapping_time(model, spec);
    return qsl_ratio_for_trajectory([&](double t) { return model.factor(t); },
                                    [&](double t) { return model.derivative(t); }, t_c, mode,
                                    quad);
}

} // namespace cohtrap
