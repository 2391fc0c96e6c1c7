#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "helpers.hpp"
#include "quadrature.hpp"

using namespace halfline;

namespace {

// Composite Simpson, restarted at every kink of |V| so no panel straddles a
// jump. The integration rule shares nothing with the adaptive quadrature or
// the closed forms; only the split locations come from the potential.
double simpson_abs(const potential& V, double lo, double hi) {
    auto pieces = V.quad_splits_in(lo, hi);
    pieces.push_back(hi);
    double total = 0.0, prev = lo;
    for (double edge : pieces) {
        const int n = 2000;
        const double h = (edge - prev) / n;
        double acc = std::abs(V.value_at(prev)) +
                     std::abs(V.value_left_limit(edge));
        for (int i = 1; i < n; ++i)
            acc += std::abs(V.value_at(prev + i * h)) * (i % 2 ? 4.0 : 2.0);
        total += acc * h / 3.0;
        prev = edge;
    }
    return total;
}

std::string message_of(const auto& fn) {
    try {
        fn();
    } catch (const spec_error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("validation failures name the offending field") {
    potential_spec s;
    s.family = family_kind::exponential;
    s.amplitude = 4.0;
    s.decay_rate = 0.0;
    CHECK(message_of([&] { potential p(s); }).find("params.lambda") !=
          std::string::npos);

    s.decay_rate = 1.0;
    s.support_start = -2.0;
    CHECK(message_of([&] { potential p(s); }).find("support_start") !=
          std::string::npos);

    potential_spec w;
    w.family = family_kind::wigner_von_neumann;
    w.amplitude = 1.0;
    w.frequency = -3.0;
    w.exponent = 1.0;
    CHECK(message_of([&] { potential p(w); }).find("params.omega") !=
          std::string::npos);

    potential_spec b;
    b.family = family_kind::bump_train;
    b.bumps = {{0.0, 2.0, 1.0}, {1.0, 3.0, 1.0}};  // overlapping
    CHECK(message_of([&] { potential p(b); }).find("params.bumps[1]") !=
          std::string::npos);
}

TEST_CASE("json parsing rejects malformed documents") {
    CHECK_THROWS_AS(potential_spec::from_json(R"({"family":"sombrero"})"),
                    spec_error);
    CHECK_THROWS_AS(potential_spec::from_json(R"({"params":{}})"), spec_error);
    CHECK_THROWS_AS(
        potential_spec::from_json(
            R"({"family":"zero","turbo":true})"),
        spec_error);
    CHECK_THROWS_AS(
        potential_spec::from_json(
            R"({"family":"exponential","params":{"c":1.0}})"),
        spec_error);
    // seed must be an integer, not a float
    CHECK_THROWS_AS(
        potential_spec::from_json(
            R"({"family":"random_decaying","params":{"c":1,"eta":1,"seed":0.5}})"),
        spec_error);
}

TEST_CASE("json round trip reproduces the potential") {
    const auto original = testpot::wigner(2.0, 2.0, 1.0);
    const auto restored =
        potential(potential_spec::from_json(original.spec().to_json()));
    for (double x : {0.5, 0.3, 1.7, 9.99, 40.0})
        CHECK(original.eval(x) == restored.eval(x));
    CHECK(original.spec().to_json() == restored.spec().to_json());
    CHECK_THROWS_AS(original.eval(-1.0), domain_error);
}

TEST_CASE("evaluation is right-continuous with one-sided left limits") {
    const auto stp = testpot::step(1.0, 0.5);
    CHECK(stp.value_at(2.0) == doctest::Approx(std::pow(3.0, -0.5)));
    CHECK(stp.value_left_limit(2.0) == doctest::Approx(std::pow(2.0, -0.5)));

    const auto bt = testpot::bumps({{1.0, 2.0, 3.0}});
    CHECK(bt.value_at(1.0) == 3.0);
    CHECK(bt.value_left_limit(1.0) == 0.0);
    CHECK(bt.value_at(2.0) == 0.0);
    CHECK(bt.value_left_limit(2.0) == 3.0);
}

TEST_CASE("support_start gates the potential on") {
    const auto gated = testpot::exponential(4.0, 1.0, 5.0);
    CHECK(gated.eval(4.999) == 0.0);
    CHECK(gated.eval(5.0) == doctest::Approx(4.0 * std::exp(-5.0)));
    CHECK(gated.cumulative_abs(5.0) == 0.0);
    const double tail = gated.cumulative_abs(30.0);
    const double expect = 4.0 * (std::exp(-5.0) - std::exp(-30.0));
    CHECK(tail == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("cumulative integral: closed form, quadrature and Simpson agree") {
    const auto cases = {
        testpot::exponential(4.0, 1.0),
        testpot::power(1.0, 0.5),
        testpot::power(2.0, 1.0),  // gamma = 1: logarithmic antiderivative
        testpot::wigner(2.0, 2.0, 1.0),
        testpot::step(1.0, 0.5),
        testpot::bumps({{0.0, 2.0, 1.5}, {3.0, 5.0, -0.5}}),
    };
    for (const auto& V : cases) {
        for (double x : {0.7, 5.0, 10.5, 37.25}) {
            const double closed = V.cumulative_abs(x);
            const double quad = V.cumulative_abs_quadrature(x);
            const double simpson = simpson_abs(V, 0.0, x);
            CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
            CHECK(closed == doctest::Approx(simpson).epsilon(1e-8));
        }
    }
}

TEST_CASE("cumulative integral is monotone and additive over cells") {
    const auto V = testpot::wigner(2.0, 2.0, 1.0);
    const auto masses = V.unit_cell_masses(40);
    double prev = 0.0;
    for (int n = 0; n < 40; ++n) {
        const double here = V.cumulative_abs(n + 1.0);
        CHECK(here >= prev);
        CHECK(here - V.cumulative_abs(double(n)) ==
              doctest::Approx(masses[n]).epsilon(1e-9));
        prev = here;
    }
}

TEST_CASE("first cell mass of the exponential reference potential") {
    const auto V = testpot::exponential(4.0, 1.0);
    CHECK(V.unit_cell_masses(1)[0] ==
          doctest::Approx(2.5284822353142307).epsilon(1e-13));
    CHECK(V.cumulative_abs(30.0) ==
          doctest::Approx(4.0 * (1.0 - std::exp(-30.0))).epsilon(1e-12));
}

TEST_CASE("bump train masses count exact overlaps") {
    const auto V = testpot::bumps({{0.0, 2.0, 1.5}, {3.0, 5.0, -0.5}});
    const auto v = V.unit_cell_masses(6);
    CHECK(v[0] == doctest::Approx(1.5));
    CHECK(v[1] == doctest::Approx(1.5));
    CHECK(v[2] == 0.0);
    CHECK(v[3] == doctest::Approx(0.5));
    CHECK(v[4] == doctest::Approx(0.5));
    CHECK(v[5] == 0.0);
    CHECK(V.cumulative_abs(10.0) == doctest::Approx(4.0));
}

TEST_CASE("checkpoint cache matches direct quadrature far from the origin") {
    const auto V = testpot::step(1.0, 0.5);
    // crosses the cached-checkpoint path; reference value is the partial sum
    double direct = 0.0;
    for (int n = 0; n < 400; ++n) direct += std::pow(n + 1.0, -0.5);
    CHECK(V.cumulative_abs(400.0) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(V.cumulative_abs(400.0) ==
          doctest::Approx(38.564640282859112).epsilon(1e-12));
    // a fractional endpoint adds the partial cell on top of the cache
    CHECK(V.cumulative_abs(400.5) ==
          doctest::Approx(direct + 0.5 * std::pow(401.0, -0.5)).epsilon(1e-12));
}

TEST_CASE("random potentials are deterministic in the seed") {
    const auto a = testpot::random_decaying(1.0, 0.5, 42);
    const auto b = testpot::random_decaying(1.0, 0.5, 42);
    const auto c = testpot::random_decaying(1.0, 0.5, 43);
    bool any_diff = false;
    for (int n = 0; n < 64; ++n) {
        const double x = n + 0.25;
        CHECK(a.eval(x) == b.eval(x));
        const double envelope = std::pow(n + 1.0, -0.5);
        CHECK(a.eval(x) >= 0.0);
        CHECK(a.eval(x) < envelope);
        any_diff = any_diff || a.eval(x) != c.eval(x);
    }
    CHECK(any_diff);
    CHECK(a.cumulative_abs(64.0) != c.cumulative_abs(64.0));
    CHECK(a.cumulative_abs(64.0) == b.cumulative_abs(64.0));
}

TEST_CASE("powers of cell values integrate consistently") {
    const auto V = testpot::exponential(4.0, 1.0);
    for (std::size_t n : {0u, 3u}) {
        const double direct = integrate_adaptive(
                                  [&](double x) {
                                      return std::pow(std::abs(V.value_at(x)),
                                                      2.0);
                                  },
                                  double(n), double(n + 1), {}, 1e-13, 1e-12)
                                  .value;
        CHECK(V.abs_power_cell_integral(n, 2.0) ==
              doctest::Approx(direct).epsilon(1e-10));
    }
    const auto W = testpot::wigner(2.0, 2.0, 1.0);
    const double direct = integrate_adaptive(
                              [&](double x) {
                                  return std::pow(std::abs(W.value_at(x)), 1.5);
                              },
                              2.0, 3.0, {}, 1e-13, 1e-12)
                              .value;
    CHECK(W.abs_power_cell_integral(2, 1.5) ==
          doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("breakpoints cover jumps and only jumps") {
    const auto stp = testpot::step(1.0, 0.5);
    const auto pts = stp.breakpoints_in(0.5, 3.5);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == 1.0);
    CHECK(pts[1] == 2.0);
    CHECK(pts[2] == 3.0);

    const auto smooth = testpot::exponential(4.0, 1.0);
    CHECK(smooth.breakpoints_in(0.0, 50.0).empty());

    const auto gated = testpot::exponential(4.0, 1.0, 5.0);
    const auto gate_pts = gated.breakpoints_in(0.0, 50.0);
    REQUIRE(gate_pts.size() == 1);
    CHECK(gate_pts[0] == 5.0);
}

TEST_CASE("averages are exact means for piecewise constant families") {
    const auto V = testpot::bumps({{1.0, 2.0, 3.0}});
    CHECK(V.piecewise_constant());
    CHECK(V.average_on(0.0, 4.0) == doctest::Approx(0.75));
    CHECK(V.average_on(1.25, 1.75) == doctest::Approx(3.0));
    const auto smooth = testpot::exponential(4.0, 1.0);
    CHECK_FALSE(smooth.piecewise_constant());
}
