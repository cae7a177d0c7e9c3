// optimize.cpp

#include "cohtrap/math/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cohtrap/errors.hpp"
#include "cohtrap/parallel.hpp"

namespace cohtrap::math {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

} // namespace

Bracket::Bracket(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw domain_error("Bracket: need finite lo < hi, got [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
}

ScalarMinimum minimize_scalar(const ScalarObjective& f, const Bracket& bracket, double tol,
                              int max_iter) {
    if (!(tol > 0.0)) throw domain_error("minimize_scalar: tol must be positive");
    const double inv_phi = 1.0 / std::numbers::phi;  // 0.618...

    double a = bracket.lo;
    double b = bracket.hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = finite_or_inf(f(c));
    double fd = finite_or_inf(f(d));
    int iter = 0;
    while (b - a > tol) {
        if (++iter > max_iter) {
            throw convergence_error("minimize_scalar: no convergence after " +
                                    std::to_string(max_iter) + " iterations");
        }
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = finite_or_inf(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = finite_or_inf(f(d));
        }
    }
    ScalarMinimum best{0.5 * (a + b), 0.0};
    best.min = finite_or_inf(f(best.argmin));
    // The interior probes can beat the midpoint on flat or skewed tails.
    if (fc < best.min) best = {c, fc};
    if (fd < best.min) best = {d, fd};
    return best;
}

Minimum2d minimize_2d(const PlaneObjective& f, const Bracket& x_box, const Bracket& y_box,
                      const Minimize2dOptions& options) {
    if (options.coarse_n < 2) throw domain_error("minimize_2d: coarse_n must be >= 2");
    if (!(options.tol > 0.0)) throw domain_error("minimize_2d: tol must be positive");

    const int n = options.coarse_n;
    const double hx = x_box.width() / (n - 1);
    const double hy = y_box.width() / (n - 1);
    auto grid_x = [&](int i) { return i + 1 == n ? x_box.hi : x_box.lo + hx * i; };
    auto grid_y = [&](int j) { return j + 1 == n ? y_box.hi : y_box.lo + hy * j; };

    std::vector<double> values(static_cast<std::size_t>(n) * n);
    parallel_for(values.size(), options.threads, [&](std::size_t k) {
        const int i = static_cast<int>(k) / n;
        const int j = static_cast<int>(k) % n;
        values[k] = finite_or_inf(f(grid_x(i), grid_y(j)));
    });

    Minimum2d best;
    best.min = kInf;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] < best.min) {
            best.min = values[k];
            best.coarse_i = static_cast<int>(k) / n;
            best.coarse_j = static_cast<int>(k) % n;
        }
    }
    best.arg = {grid_x(best.coarse_i), grid_y(best.coarse_j)};
    best.coarse_min = best.min;
    if (!std::isfinite(best.min)) {
        throw convergence_error("minimize_2d: objective is non-finite on the whole coarse grid");
    }

    double step_x = hx;
    double step_y = hy;
    int iter = 0;
    while (step_x >= options.tol || step_y >= options.tol) {
        if (++iter > options.max_iter) {
            throw convergence_error("minimize_2d: refinement did not converge after " +
                                    std::to_string(options.max_iter) + " iterations");
        }
        bool moved = false;
        const auto [x, y] = best.arg;
        const std::pair<double, double> candidates[] = {
            {std::max(x_box.lo, x - step_x), y},
            {std::min(x_box.hi, x + step_x), y},
            {x, std::max(y_box.lo, y - step_y)},
            {x, std::min(y_box.hi, y + step_y)},
        };
        for (const auto& [cx, cy] : candidates) {
            if (cx == x && cy == y) continue;
            const double v = finite_or_inf(f(cx, cy));
            if (v < best.min) {
                best.min = v;
                best.arg = {cx, cy};
                moved = true;
                break;
            }
        }
        if (!moved) {
            step_x *= 0.5;
            step_y *= 0.5;
        }
    }
    return best;
}

} // namespace cohtrap::math
