// optimize.hpp: derivative-free minimizers over bounded boxes

#pragma once

#include <functional>
#include <utility>

namespace cohtrap::math {

struct Bracket {
    double lo = 0.0;
    double hi = 1.0;

    Bracket() = default;
    Bracket(double lo_, double hi_);  // validates lo < hi, both finite

    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

struct ScalarMinimum {
    double argmin = 0.0;
    double min = 0.0;
};

struct Minimum2d {
    std::pair<double, double> arg{0.0, 0.0};
    double min = 0.0;
    double coarse_min = 0.0;  // best value on the coarse grid
    int coarse_i = 0;  // grid indices of the coarse-scan seed
    int coarse_j = 0;
};

using ScalarObjective = std::function<double(double)>;
using PlaneObjective = std::function<double(double, double)>;

/// Golden-section search. Assumes f is unimodal on the bracket; that is not
/// checked. Throws convergence_error after max_iter contractions.
ScalarMinimum minimize_scalar(const ScalarObjective& f, const Bracket& bracket, double tol,
                              int max_iter = 500);

struct Minimize2dOptions {
    int coarse_n = 50;
    double tol = 1e-4;
    int max_iter = 10000;
    unsigned threads = 1;  // coarse scan only; 0 = hardware concurrency
};

/// Coarse grid scan followed by coordinate descent with shrinking steps.
///
/// The scan visits grid points with the first coordinate outermost and keeps
/// the first strictly smaller value, so plateaus resolve to the smallest
/// parameters. Non-finite values count as +inf. Refinement only accepts
/// improvements, so the result is never worse than the best scan point.
Minimum2d minimize_2d(const PlaneObjective& f, const Bracket& x_box, const Bracket& y_box,
                      const Minimize2dOptions& options = {});

} // namespace cohtrap::math
