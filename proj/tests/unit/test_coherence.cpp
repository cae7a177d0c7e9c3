#include "doctest.h"

#include <cmath>
#include <random>

#include "cohtrap/coherence.hpp"
#include "cohtrap/errors.hpp"
#include "cohtrap/math/special.hpp"

using namespace cohtrap;
using doctest::Approx;

namespace {

ModelParams make(double alpha, double mu, double lambda, double upsilon = 1.5) {
    ModelParams p;
    p.bath = {alpha, mu, 1.0};
    p.corr = {lambda, upsilon};
    return p;
}

QubitState equal(complex rho_eg) { return {0.5, 0.5, rho_eg}; }

} // namespace

TEST_SUITE("coherence") {

TEST_CASE("relative entropy of coherence on simple states") {
    CHECK(rel_entropy_coherence(equal(0.0)) == 0.0);
    CHECK(rel_entropy_coherence({0.3, 0.7, 0.0}) == Approx(0.0).epsilon(1e-15));
    CHECK(rel_entropy_coherence(equal(0.5)) == Approx(1.0).epsilon(1e-12));
    CHECK(rel_entropy_coherence(equal(complex(0.0, -0.5))) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stationary coherence anchor value") {
    // 1 - H2(0.74617) evaluated directly
    CHECK(rel_entropy_coherence(equal(0.5 * 0.49234)) ==
          Approx(1.0 - math::binary_entropy(0.74617)).epsilon(1e-12));
    CHECK(rel_entropy_coherence(equal(0.5 * 0.49234)) == Approx(0.182707713).epsilon(1e-8));
}

TEST_CASE("matches an eigenvalue computation for unequal populations") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> up(0.0, 1.0), uph(0.0, 6.283185307179586);
    for (int i = 0; i < 500; ++i) {
        const double pe = up(rng);
        const double amp = up(rng) * std::sqrt(pe * (1 - pe));
        const QubitState s{pe, 1 - pe, std::polar(amp, uph(rng))};
        const double tr = 1.0, det = pe * (1 - pe) - amp * amp;
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
        const double l1 = 0.5 + disc;
        const double expected = math::binary_entropy(pe) - math::binary_entropy(std::min(1.0, l1));
        CHECK(rel_entropy_coherence(s) == Approx(std::max(0.0, expected)).epsilon(1e-9));
        CHECK(rel_entropy_coherence(s) >= 0.0);
        CHECK(rel_entropy_coherence(s) <= 1.0);
    }
}

TEST_CASE("invalid states are rejected") {
    CHECK_THROWS_AS(rel_entropy_coherence({0.6, 0.6, 0.0}), domain_error);
    CHECK_THROWS_AS(rel_entropy_coherence({-0.1, 1.1, 0.0}), domain_error);
    CHECK_THROWS_AS(rel_entropy_coherence(equal(0.6)), domain_error);
    CHECK_THROWS_AS(rel_entropy_coherence(equal(complex(std::nan(""), 0.0))), domain_error);
}

TEST_CASE("l1 coherence") {
    CHECK(l1_coherence(equal(0.0)) == 0.0);
    CHECK(l1_coherence(equal(0.5)) == 1.0);
    CHECK(l1_coherence(equal(complex(0.3, 0.4))) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("both measures increase with the off-diagonal magnitude") {
    double prev_rel = -1.0, prev_l1 = -1.0;
    for (int i = 0; i <= 500; ++i) {
        const auto c = coherence(equal(0.5 * i / 500.0));
        CHECK(c.rel_entropy > prev_rel);
        CHECK(c.l1 > prev_l1);
        prev_rel = c.rel_entropy;
        prev_l1 = c.l1;
    }
}

TEST_CASE("phase invariance") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ua(0.0, 0.5), uph(-3.14, 3.14);
    for (int i = 0; i < 200; ++i) {
        const double a = ua(rng);
        const auto c0 = coherence(equal(a));
        const auto c1 = coherence(equal(std::polar(a, uph(rng))));
        CHECK(std::abs(c0.rel_entropy - c1.rel_entropy) < 1e-12);
        CHECK(std::abs(c0.l1 - c1.l1) < 1e-12);
    }
}

TEST_CASE("measures vanish only without off-diagonal elements") {
    const auto c = coherence(equal(1e-6));
    CHECK(c.rel_entropy > 0.0);
    CHECK(c.l1 > 0.0);
}

TEST_CASE("stationary coherence") {
    CHECK(stationary_coherence(make(0.2, 1.46, 0.0)).rel_entropy == Approx(0.1827).epsilon(0.0005 / 0.1827));
    CHECK(stationary_coherence(make(0.2, 1.46, 1.0)).rel_entropy == Approx(0.3878).epsilon(0.001 / 0.3878));
    const auto sub = stationary_coherence(make(0.2, -0.5, 0.0));
    CHECK(sub.rel_entropy == 0.0);
    CHECK(sub.l1 == 0.0);
    auto p = make(0.3, 2.2, 0.7, 2.5);
    const auto a = stationary_coherence(p);
    p.qubit.omega0 = 3.0;
    const auto b = stationary_coherence(p);
    CHECK(std::abs(a.rel_entropy - b.rel_entropy) < 1e-12);
    CHECK(std::abs(a.l1 - b.l1) < 1e-12);
    CHECK(a.l1 == Approx(stationary_magnitude(p)).epsilon(1e-14));
}

TEST_CASE("initial coherence") {
    CHECK(initial_coherence(make(0.2, 1.46, 0.0)) == Approx(1.0).epsilon(1e-12));
    const double s = std::exp(-0.5 * std::tgamma(1.5));
    CHECK(initial_coherence(make(0.2, 1.46, 1.0)) ==
          Approx(1.0 - math::binary_entropy(0.5 * (1 + s))).epsilon(1e-12));
    CHECK(initial_coherence(make(0.2, 1.46, 1.0)) == Approx(0.322153224).epsilon(1e-8));
    for (double lambda : {0.01, 0.1, 0.5, 0.9, 1.0}) {
        CHECK(initial_coherence(make(0.2, 1.46, lambda)) < 1.0);
    }
}

TEST_CASE("initial coherence with unequal weights uses the reduced state") {
    auto p = make(0.2, 1.46, 0.4);
    p.qubit.ce = {0.6, 0.0};
    p.qubit.cg = {0.8, 0.0};
    CHECK(initial_coherence(p) == Approx(rel_entropy_coherence(reduced_state(0.0, p))).epsilon(1e-15));
}

} // TEST_SUITE
