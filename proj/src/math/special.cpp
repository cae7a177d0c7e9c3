// special.cpp

#include "cohtrap/math/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cohtrap/errors.hpp"

namespace cohtrap::math {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double gamma_lanczos(double x) {
    // Valid for x >= 0.5; evaluates Gamma(x) = Gamma((x-1)+1).
    const double z = x - 1.0;
    double sum = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        sum += kLanczosCoeffs[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    // Split the power so t^(z+0.5) does not overflow before exp(-t) is applied.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * sum;
}

} // namespace

double gamma(double x) {
    if (!std::isfinite(x) || x <= -1.0 || x == 0.0) {
        throw domain_error("gamma: argument " + std::to_string(x) +
                           " outside (-1, 0) U (0, inf)");
    }
    if (x < 0.5) {
        const double pi = std::numbers::pi;
        return pi / (std::sin(pi * x) * gamma_lanczos(1.0 - x));
    }
    return gamma_lanczos(x);
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw domain_error("binary_entropy: probability " + std::to_string(p) +
                           " outside [0, 1]");
    }
    const double q = 1.0 - p;
    auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
    return term(p) + term(q);
}

} // namespace cohtrap::math
