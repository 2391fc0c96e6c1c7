#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "helpers.hpp"
#include "norms.hpp"
#include "serialize.hpp"

using namespace halfline;
using std::numbers::pi;

TEST_CASE("partial norm and tail bound bracket the harmonic-series limit") {
    // v_n = 1/(n+1), p = 2: the full norm is sqrt(sum 1/n^2) = pi/sqrt(6)
    const auto V = testpot::step(1.0, 1.0);
    const double limit = pi / std::sqrt(6.0);
    const auto r = amalgam_norm(V, 2.0, 10000);
    CHECK(r.value < limit);
    CHECK(r.upper() >= limit);
    CHECK(r.upper() - r.value < 1e-3);
    CHECK(r.value == doctest::Approx(limit).epsilon(1e-4));

    // fewer cells: wider but still correct bracket
    const auto small = amalgam_norm(V, 2.0, 16);
    CHECK(small.value < limit);
    CHECK(small.upper() >= limit);
}

TEST_CASE("tail bound is infinite exactly when the p-sum diverges") {
    const auto critical = testpot::step(1.0, 0.5);
    CHECK(std::isinf(amalgam_norm(critical, 2.0, 100).tail_bound));
    CHECK(std::isinf(amalgam_norm(critical, 2.0, 100).upper()));
    CHECK(std::isfinite(amalgam_norm(critical, 3.0, 100).tail_bound));

    const auto compact = testpot::bumps({{0.0, 1.5, 2.0}});
    const auto r = amalgam_norm(compact, 2.0, 8);
    CHECK(r.tail_bound == 0.0);
    CHECK(r.value == r.upper());
}

TEST_CASE("weak norm equals a brute-force level-set supremum") {
    const auto V = testpot::wigner(2.0, 2.0, 1.0);
    const std::size_t cells = 500;
    const double p = 2.0;
    const double weak = weak_amalgam_norm(V, p, cells);

    auto masses = V.unit_cell_masses(cells);
    double brute = 0.0;
    for (double s0 : masses) {
        const double s = s0 * (1.0 - 1e-12);
        if (s <= 0.0) continue;
        const auto count = std::count_if(masses.begin(), masses.end(),
                                         [&](double v) { return v > s; });
        brute = std::max(brute, s * std::pow(double(count), 1.0 / p));
    }
    CHECK(weak == doctest::Approx(brute).epsilon(1e-9));
}

TEST_CASE("critical step sequence sits exactly on the weak-norm unit sphere") {
    const auto V = testpot::step(1.0, 0.5);
    CHECK(weak_amalgam_norm(V, 2.0, 10000) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // weak norm never exceeds the strong norm
    const auto harmonic = testpot::step(1.0, 1.0);
    CHECK(weak_amalgam_norm(harmonic, 2.0, 4000) <=
          amalgam_norm(harmonic, 2.0, 4000).value + 1e-12);
}

TEST_CASE("weak-norm growth cap holds along the dyadic grid") {
    const auto V = testpot::step(1.0, 0.5);
    const auto grid = dyadic_grid(4, 20);
    const auto trace = growth_check_weak(V, 2.0, grid, std::size_t(1) << 20);
    CHECK(trace.cap == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(trace.ratio.size() == grid.size());
    double max_ratio = 0.0;
    for (double r : trace.ratio) {
        CHECK(r <= trace.cap + 1e-9);
        max_ratio = std::max(max_ratio, r);
    }
    // the cap is nearly attained, so it cannot be tightened
    CHECK(max_ratio > 1.99);
}

TEST_CASE("finite strong norm forces the growth ratio to decay") {
    const auto V = testpot::step(1.0, 1.0);
    const auto grid = dyadic_grid(4, 20);
    const auto trace = growth_check_strong(V, 2.0, grid);
    REQUIRE(trace.ratio.size() == grid.size());
    CHECK(trace.ratio.back() < trace.ratio.front() / 10.0);
    CHECK(trace.ratio.back() < 0.015);
}

TEST_CASE("cellwise Holder embedding") {
    for (double p : {1.5, 2.0, 3.0}) {
        CHECK(holder_embedding_check(testpot::exponential(4.0, 1.0), p, 100));
        CHECK(holder_embedding_check(testpot::power(1.0, 0.5), p, 100));
        CHECK(holder_embedding_check(testpot::wigner(2.0, 2.0, 1.0), p, 100));
    }
    // the first exponential cell, numerically: 6.393 <= 6.917
    const auto V = testpot::exponential(4.0, 1.0);
    const double v0 = V.unit_cell_masses(1)[0];
    const double rhs = V.abs_power_cell_integral(0, 2.0);
    const double e1 = 1.0 - std::exp(-1.0);
    CHECK(v0 * v0 == doctest::Approx(16.0 * e1 * e1).epsilon(1e-12));
    CHECK(rhs == doctest::Approx(8.0 * (1.0 - std::exp(-2.0))).epsilon(1e-10));
    CHECK(v0 * v0 <= rhs);
}

TEST_CASE("fitted growth exponent lands on 1 - 1/p for critical sequences") {
    // eta = 1/p sits exactly on the weak-norm sphere and I grows like
    // x^(1 - 1/p); the log-log fit must recover that exponent
    const auto grid = dyadic_grid(4, 20);
    const double fit2 = fitted_growth_exponent(testpot::step(1.0, 0.5), grid);
    CHECK(fit2 > 0.5 - 0.02);
    CHECK(fit2 < 0.5 + 0.02);
    const double fit3 =
        fitted_growth_exponent(testpot::step(1.0, 1.0 / 3.0), grid);
    CHECK(fit3 > 2.0 / 3.0 - 0.02);
    CHECK(fit3 < 2.0 / 3.0 + 0.02);
    CHECK(std::isnan(fitted_growth_exponent(testpot::zero(), grid)));
}

TEST_CASE("norm report assembles all pieces") {
    const auto V = testpot::step(1.0, 0.5);
    const auto report = make_norm_report(V, 2.0, 10000);
    CHECK(report.p == 2.0);
    CHECK(report.cells == 10000);
    CHECK(report.lp_w_L1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isinf(report.lp_L1.upper()));
    CHECK(report.trace.cap == doctest::Approx(2.0));
    CHECK(report.growth_exponent == doctest::Approx(0.5).epsilon(0.05));
    const auto json = norm_report_json(report);
    CHECK(json.find("\"lp_w_L1\"") != std::string::npos);
    CHECK(json.find("\"growth_exponent\"") != std::string::npos);
}

TEST_CASE("doubles serialize at 17 significant digits and round-trip") {
    for (double v : {1.0, pi, 2.0 / 3.0, 1e-300, 123456.789012345678,
                     -0.49999999999999994}) {
        const auto text = format_double(v);
        CHECK(std::stod(text) == v);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("exponent and cell-count arguments are validated") {
    const auto V = testpot::step(1.0, 1.0);
    CHECK_THROWS_AS(amalgam_norm(V, 1.0, 100), argument_error);
    CHECK_THROWS_AS(amalgam_norm(V, 0.5, 100), argument_error);
    CHECK_THROWS_AS(weak_amalgam_norm(V, 1.0, 100), argument_error);
    CHECK_THROWS_AS(amalgam_norm(V, 2.0, 0), argument_error);
}
