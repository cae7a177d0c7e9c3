// special.hpp: gamma function and binary entropy

#pragma once

namespace cohtrap::math {

/// Euler gamma function on (-1, 0) U (0, inf).
///
/// Lanczos approximation (g = 7, nine coefficients) for x >= 0.5 and the
/// reflection identity below that. Relative error is about 1e-15 on the
/// positive axis. Throws cohtrap::domain_error for x <= -1 or x == 0.
double gamma(double x);

/// -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
double binary_entropy(double p);

} // namespace cohtrap::math
