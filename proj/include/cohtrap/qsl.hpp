// qsl.hpp: trapping time and quantum-speed-limit ratio along the dephasing
// trajectory

#pragma once

#include <functional>
#include <string_view>

#include "cohtrap/dephasing.hpp"
#include "cohtrap/math/quadrature.hpp"

namespace cohtrap {

/// Tolerance band that defines when |Y(t)| has settled on |Y(inf)|.
struct TrappingSpec {
    double rel_tol = 1e-3;
    double abs_tol = 1e-6;
    double t_max = 50.0;  // in units of 1/omega_c
    int grid_n = 5000;

    bool operator==(const TrappingSpec&) const = default;
};


void validate(const TrappingSpec& spec);

enum class QslMode {
    paper_literal,    // |Y(0)| |Y(tc) - Y(0)| over the path length
    relative_purity,  // relative-purity bound, B(rho_0, rho_tc) / |ce cg| over the path length
};

std::string_view to_string(QslMode mode);
QslMode parse_qsl_mode(std::string_view text);  // "paper" | "purity" and the enum names

struct QslResult {
    double t_c = 0.0;
    double ratio = 0.0;        // tau_QSL / t_c = numerator / denominator
    double numerator = 0.0;
    double denominator = 0.0;  // integral of |dY/dt| over [0, t_c]
    QslMode mode = QslMode::paper_literal;
};

/// Smallest point t of the uniform grid on [0, t_max / omega_c] such that
/// every grid point s >= t satisfies
///   | |Y(s)| - |Y(inf)| | <= abs_tol + rel_tol |Y(inf)|.
/// A band already met at t = 0 returns the first positive grid point.
///
/// Throws no_trapping_error for mu <= 0 and convergence_error when the band
/// is still violated at t_max.
double trapping_time(const ModelParams& params, const TrappingSpec& spec = {});

/// |tr(rho_0 rho_tau) - tr(rho_0^2)|.
double relative_purity_metric(const QubitState& rho0, const QubitState& rho_tau);

/// tau_QSL / t_c between rho(0) and rho(t_c). Requires equal weights
/// |ce|^2 = |cg|^2 = 1/2. The path length uses the analytic derivative.
QslResult qsl_ratio(const ModelParams& params, const TrappingSpec& spec = {},
                    QslMode mode = QslMode::paper_literal,
                    const math::QuadratureSpec& quad = {});

/// Same ratio for an arbitrary trajectory Y(t) with derivative dY(t) on
/// [0, t_c], assuming equal-weight populations. Throws degenerate_error when
/// the path length is zero.
QslResult qsl_ratio_for_trajectory(const std::function<complex(double)>& ups,
                                   const std::function<complex(double)>& dups, double t_c,
                                   QslMode mode, const math::QuadratureSpec& quad = {});

} // namespace cohtrap
