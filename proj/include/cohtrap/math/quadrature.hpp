// quadrature.hpp: adaptive Simpson integration with an absolute error budget

#pragma once

#include <cmath>
#include <string>

#include "cohtrap/errors.hpp"

namespace cohtrap::math {

struct QuadratureSpec {
    double abs_tol = 1e-9;
    int max_depth = 40;
};

namespace detail {

// Number of equal panels the interval is cut into before adaptation starts,
// so a lucky five-point fit on the whole interval cannot end the recursion.
inline constexpr int kInitialPanels = 16;

struct SimpsonState {
    bool exhausted = false;
};

template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double eps, int depth, SimpsonState& state) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0 || !(m > a && m < b)) {
        state.exhausted = true;
        return left + right + delta / 15.0;
    }
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1, state) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1, state);
}

} // namespace detail

/// Integral of f over [a, b] to within spec.abs_tol for smooth f.
///
/// Throws cohtrap::domain_error when b < a or the spec is invalid, and
/// cohtrap::convergence_error when some panel reaches max_depth without
/// meeting its share of the tolerance.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    if (!(spec.abs_tol > 0.0) || spec.max_depth < 1) {
        throw domain_error("integrate: abs_tol must be > 0 and max_depth >= 1");
    }
    if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw domain_error("integrate: need finite a <= b");
    }
    if (a == b) return 0.0;

    detail::SimpsonState state;
    const int panels = detail::kInitialPanels;
    const double h = (b - a) / panels;
    const double eps = spec.abs_tol / panels;
    double total = 0.0;
    double x0 = a;
    double f0 = f(x0);
    for (int i = 0; i < panels; ++i) {
        const double x1 = (i + 1 == panels) ? b : a + h * (i + 1);
        const double xm = 0.5 * (x0 + x1);
        const double fm = f(xm);
        const double f1 = f(x1);
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += detail::simpson_recurse(f, x0, x1, f0, fm, f1, whole, eps,
                                         spec.max_depth, state);
        x0 = x1;
        f0 = f1;
    }
    if (state.exhausted) {
        throw convergence_error("integrate: max_depth " + std::to_string(spec.max_depth) +
                                " exhausted before reaching abs_tol");
    }
    return total;
}

} // namespace cohtrap::math
