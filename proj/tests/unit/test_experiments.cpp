#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>

#include "cohtrap/coherence.hpp"
#include "cohtrap/errors.hpp"
#include "cohtrap/experiments.hpp"
#include "cohtrap/io.hpp"

using namespace cohtrap;
using namespace cohtrap::experiments;
using doctest::Approx;

namespace {

ModelParams make(double alpha, double mu, double lambda, double upsilon) {
    ModelParams p;
    p.bath = {alpha, mu, 1.0};
    p.corr = {lambda, upsilon};
    return p;
}

std::string csv_of(const SweepResult& r) {
    std::ostringstream out;
    io::write_sweep_csv(out, r);
    return out.str();
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("axis parsing and validation") {
    const auto a = parse_axis("mu=0.1:4:40");
    CHECK(a.name == Axis::mu);
    CHECK(a.lo == 0.1);
    CHECK(a.hi == 4.0);
    CHECK(a.n == 40);
    const auto v = a.values();
    CHECK(v.size() == 40);
    CHECK(v.front() == 0.1);
    CHECK(v.back() == 4.0);
    CHECK(parse_axis("upsilon=0.5:5:3").values()[1] == Approx(2.75));
    CHECK(AxisSpec::list(Axis::lambda, {0.0, 0.3}).values() == std::vector<double>{0.0, 0.3});
    CHECK_THROWS_AS(parse_axis("mu=-2:4:10"), domain_error);
    CHECK_THROWS_AS(parse_axis("mu=1:4"), domain_error);
    CHECK_THROWS_AS(parse_axis("mu=4:1:10"), domain_error);
    CHECK_THROWS_AS(parse_axis("mu=1:4:1"), domain_error);
    CHECK_THROWS_AS(parse_axis("beta=1:4:10"), domain_error);
    CHECK_THROWS_AS(parse_axis("lambda=0:1.5:3"), domain_error);
    CHECK_THROWS_AS(parse_axis("alpha=0:1:3"), domain_error);
    CHECK_THROWS_AS(parse_axis("mu=1:x:3"), domain_error);
    CHECK(to_string(parse_axis_name("omega0")) == "omega0");
}

TEST_CASE("sweep shape and row order") {
    const auto r = sweep(make(0.2, 1.46, 0.0, 1.5),
                         {AxisSpec::uniform(Axis::mu, 0.1, 4.0, 40), AxisSpec::uniform(Axis::alpha, 0.01, 1.0, 40)},
                         {true, false}, {{}, QslMode::paper_literal, {}, 2});
    REQUIRE(r.rows.size() == 1600);
    CHECK(r.rows[0].coords == std::vector<double>{0.1, 0.01});
    CHECK(r.rows[1].coords[0] == 0.1);
    CHECK(r.rows[40].coords[0] == Approx(0.2));
    CHECK(r.rows[1599].coords == std::vector<double>{4.0, 1.0});
    for (const auto& row : r.rows) {
        CHECK(row.error_code.empty());
        REQUIRE(row.c_stationary);
        CHECK(*row.c_stationary >= 0.0);
    }
    CHECK(*r.rows[5 * 40 + 7].c_stationary ==
          Approx(stationary_coherence(make(r.rows[5 * 40 + 7].coords[1], r.rows[5 * 40 + 7].coords[0], 0.0, 1.5))
                     .rel_entropy));
}

TEST_CASE("correlation enlarges the trapping region") {
    const std::vector<AxisSpec> axes{AxisSpec::uniform(Axis::mu, 0.1, 4.0, 40),
                                     AxisSpec::uniform(Axis::alpha, 0.01, 1.0, 40)};
    const auto a = sweep(make(0.2, 1.46, 0.0, 1.5), axes);
    const auto b = sweep(make(0.2, 1.46, 1.0, 1.5), axes);
    std::set<std::size_t> sa, sb;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (*a.rows[i].c_stationary > 0.01) sa.insert(i);
        if (*b.rows[i].c_stationary > 0.01) sb.insert(i);
    }
    CHECK(sb.size() > sa.size());
    for (auto i : sa) CHECK(sb.count(i) == 1);
}

TEST_CASE("sweep output is independent of the thread count") {
    const std::vector<AxisSpec> axes{AxisSpec::uniform(Axis::lambda, 0.0, 1.0, 6),
                                     AxisSpec::uniform(Axis::mu, 0.5, 3.0, 6)};
    const auto base = make(0.2, 2.0, 0.0, 2.0);
    const auto one = sweep(base, axes, {true, true}, {{}, QslMode::paper_literal, {}, 1});
    const auto four = sweep(base, axes, {true, true}, {{}, QslMode::paper_literal, {}, 4});
    CHECK(csv_of(one) == csv_of(four));
    CHECK(csv_of(one) == csv_of(sweep(base, axes, {true, true}, {{}, QslMode::paper_literal, {}, 1})));
}

TEST_CASE("per-row errors are recorded without aborting") {
    const auto r = sweep(make(0.2, 1.46, 0.1, 1.5), {AxisSpec::list(Axis::mu, {0.3, 2.0})}, {true, true});
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].error_code == "no_convergence");
    CHECK_FALSE(r.rows[0].qsl_ratio);
    CHECK(r.rows[0].c_stationary);
    CHECK(r.rows[1].error_code.empty());
    CHECK(r.rows[1].qsl_ratio);
}

TEST_CASE("sweep preconditions") {
    const auto base = make(0.2, 1.46, 0.0, 1.5);
    CHECK_THROWS_AS(sweep(base, {}), domain_error);
    const auto mu = AxisSpec::uniform(Axis::mu, 0.5, 1.0, 3);
    CHECK_THROWS_AS(sweep(base, {mu, mu}), domain_error);
    CHECK_THROWS_AS(sweep(base, {mu, AxisSpec::uniform(Axis::alpha, 0.1, 1, 2), AxisSpec::uniform(Axis::lambda, 0, 1, 2)}),
                    domain_error);
    CHECK_THROWS_AS(sweep(base, {AxisSpec::uniform(Axis::mu, -0.5, 1.0, 3)}, {true, true}), domain_error);
    CHECK_THROWS_AS(sweep(base, {mu}, {false, false}), domain_error);
}

TEST_CASE("time axis adds instantaneous coherence") {
    const auto base = make(0.2, 1.46, 0.5, 1.5);
    const auto r = sweep(base, {AxisSpec::uniform(Axis::t, 0.0, 10.0, 11)});
    REQUIRE(r.rows[3].c_t);
    CHECK(*r.rows[3].c_t == Approx(coherence(reduced_state(3.0, base)).rel_entropy).epsilon(1e-14));
    CHECK(*r.rows[0].c_t == Approx(initial_coherence(base)).epsilon(1e-14));
}

TEST_CASE("stationary coherence trends") {
    double prev = -1.0;
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double c = stationary_coherence(make(0.2, 1.46, lambda, 1.5)).rel_entropy;
        CHECK(c > prev);
        prev = c;
    }
    CHECK(prev == Approx(0.38782).epsilon(1e-4));
    prev = 2.0;
    for (double alpha : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        const double c = stationary_coherence(make(alpha, 1.46, 1.0, 1.5)).rel_entropy;
        CHECK(c < prev);
        prev = c;
    }
}

TEST_CASE("optimal Ohmicity at lambda = 0 is the gamma minimizer") {
    std::vector<double> stars;
    for (double alpha : {0.05, 0.2, 0.5}) {
        const auto o = optimize_stationary_mu(make(alpha, 1.0, 0.0, 1.5), {0.1, 4.0});
        CHECK(o.mu_star == Approx(1.4616321).epsilon(1e-4));
        CHECK(o.c_star == Approx(stationary_coherence(make(alpha, o.mu_star, 0.0, 1.5)).rel_entropy));
        stars.push_back(o.mu_star);
    }
    CHECK(std::abs(stars[0] - stars[2]) < 0.005);
    const auto full = optimize_stationary_mu(make(0.2, 1.0, 1.0, 1.5), {0.1, 4.0});
    CHECK(std::abs(full.mu_star - 1.46) < 0.05);
    CHECK_THROWS_AS(optimize_stationary_mu(make(0.2, 1.0, 0.0, 1.5), {0.0, 4.0}), domain_error);
    CHECK_THROWS_AS(optimize_stationary_mu(make(0.2, 1.0, 0.0, 1.5), {0.5, 5.0}), domain_error);
}

TEST_CASE("ECT crossings against a brent-refined oracle") {
    const auto slices = ect_boundary(0.2, 1.46, AxisSpec::list(Axis::lambda, {1.0, 0.3, 0.9}));
    REQUIRE(slices.size() == 3);
    REQUIRE(slices[0].crossings.size() == 2);
    CHECK(std::abs(slices[0].crossings[0] - 0.4874991275359184) < 2e-4);
    CHECK(std::abs(slices[0].crossings[1] - 3.0030519459165315) < 2e-4);
    CHECK(slices[1].enhanced_length() == Approx(3.702).epsilon(1e-3));
    CHECK(slices[2].enhanced_length() == Approx(2.656).epsilon(1e-3));
    CHECK(slices[2].enhanced_length() < slices[1].enhanced_length());
    const double ref = uncorrelated_stationary_coherence(0.2, 1.46);
    CHECK(ref == Approx(0.18274688).epsilon(1e-7));
    for (const auto& s : slices) {
        for (const auto& [lo, hi] : s.enhanced) {
            auto p = make(0.2, 1.46, s.lambda, 0.5 * (lo + hi));
            CHECK(stationary_coherence(p).rel_entropy > ref);
        }
    }
}

TEST_CASE("ECT region degenerates as lambda vanishes") {
    const auto slices = ect_boundary(0.2, 1.46, AxisSpec::list(Axis::lambda, {0.0}));
    CHECK(slices[0].enhanced_length() == 0.0);
    auto p = make(0.2, 1.46, 1e-6, 1.5);
    CHECK(std::abs(stationary_coherence(p).rel_entropy - uncorrelated_stationary_coherence(0.2, 1.46)) < 1e-5);
}

TEST_CASE("QSL ratio decreases with correlation") {
    double prev = 2.0;
    for (double lambda : {0.0, 0.3, 0.6, 0.9}) {
        const auto q = qsl_ratio(make(0.2, 2.0, lambda, 2.0));
        CHECK(q.ratio < prev);
        CHECK(q.ratio > 0.0);
        prev = q.ratio;
    }
}

TEST_CASE("one-dimensional QSL optimization") {
    QslOptimizeOptions o;
    o.coarse_n = 24;
    const auto mu = optimize_qsl(make(0.2, 2.0, 0.3, 2.0), QslVars::mu, {}, o);
    CHECK(mu.vars == QslVars::mu);
    CHECK(mu.upsilon == 2.0);
    CHECK(mu.ratio <= mu.coarse_min);
    CHECK(mu.ratio == Approx(qsl_ratio(make(0.2, mu.mu, 0.3, 2.0)).ratio).epsilon(1e-12));
    CHECK(mu.t_c == Approx(trapping_time(make(0.2, mu.mu, 0.3, 2.0))));
    const auto ups = optimize_qsl(make(0.2, 3.0, 0.5, 2.0), QslVars::upsilon, {}, o);
    CHECK(ups.mu == 3.0);
    CHECK(ups.ratio <= ups.coarse_min);
}

TEST_CASE("joint QSL optimization never loses to the coarse scan") {
    QslOptimizeOptions o;
    o.coarse_n = 12;
    o.sweep.threads = 2;
    const auto j = optimize_qsl(make(0.2, 2.0, 0.5, 2.0), QslVars::joint, {}, o);
    CHECK(j.vars == QslVars::joint);
    CHECK(j.ratio <= j.coarse_min);
    CHECK(j.mu >= 0.5);
    CHECK(j.mu <= 4.0);
    CHECK(j.upsilon >= 0.5);
    CHECK(j.upsilon <= 5.0);
    CHECK_THROWS_AS(optimize_qsl(make(0.2, 2.0, 0.5, 2.0), QslVars::joint, {{-0.5, 2.0}, {0.5, 5.0}}, o),
                    domain_error);
}

TEST_CASE("figure ids") {
    CHECK(all_figures().size() == 9);
    for (auto id : all_figures()) CHECK(parse_figure_id(to_string(id)) == id);
    CHECK_THROWS_AS(parse_figure_id("fig4"), std::invalid_argument);
}

TEST_CASE("figure datasets carry their fixed parameters") {
    FigureOptions o;
    o.resolution = 8;
    o.threads = 2;
    const auto c = figure_dataset(FigureId::fig1c, o);
    CHECK(c.data.manifest.base.bath.alpha == 0.2);
    CHECK(c.data.manifest.base.corr.upsilon == 1.5);
    CHECK(c.data.axes[0].values() == std::vector<double>{0.0, 0.3, 0.6, 1.0});
    CHECK(c.data.rows.size() == 4 * 8);
    const auto e = figure_dataset(FigureId::fig2b, o);
    REQUIRE(e.ect_reference);
    CHECK(*e.ect_reference == Approx(0.18274688).epsilon(1e-7));
    CHECK(e.ect.size() == 4);
    for (const auto& row : e.data.rows) CHECK(row.ect_margin);
    const auto a = figure_dataset(FigureId::fig2a, o);
    CHECK(a.data.rows.size() == 64);
    CHECK(a.data.manifest.base.bath.mu == 1.46);
}

} // TEST_SUITE
