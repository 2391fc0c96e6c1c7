#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eigensolver.hpp"
#include "helpers.hpp"

using namespace halfline;
using std::numbers::pi;

TEST_CASE("free operator on [0, pi] has eigenvalues n^2") {
    const auto V = testpot::zero();
    const auto set = eigenvalues_in_window(V, pi, std::sqrt(0.5), 10.0);
    REQUIRE(set.size() == 10);
    for (int n = 1; n <= 10; ++n) {
        CHECK(set.eigen_momenta[n - 1] ==
              doctest::Approx(double(n)).epsilon(1e-12));
        CHECK(set.eigen_energies[n - 1] ==
              doctest::Approx(double(n * n)).epsilon(1e-10));
        CHECK(set.residuals[n - 1] < 1e-10);
    }
    CHECK(set.method == eigen_method::prufer_shooting);
    CHECK(std::string(method_name(set.method)) == "prufer_shooting");
}

TEST_CASE("constant shift moves every eigenvalue by the shift") {
    const auto V = testpot::constant(2.0, pi);
    const auto set = eigenvalues_in_window(V, pi, 0.5, 6.0);
    REQUIRE(set.size() >= 5);
    for (std::size_t i = 0; i < 5; ++i) {
        const double n = double(i + 1);
        CHECK(set.eigen_energies[i] ==
              doctest::Approx(n * n + 2.0).epsilon(1e-7));
    }
}

TEST_CASE("oracle covers negative energies the phase route cannot") {
    const auto V = testpot::constant(-3.0, pi);
    const auto set =
        fd_oracle_eigenvalues(V, pi, -3.0, 14.0, default_oracle_config(pi, 14.0));
    REQUIRE(set.size() == 4);
    const double expect[] = {-2.0, 1.0, 6.0, 13.0};
    for (int i = 0; i < 4; ++i)
        CHECK(set.eigen_energies[i] ==
              doctest::Approx(expect[i]).epsilon(2e-6));
    CHECK(std::isnan(set.eigen_momenta[0]));
    CHECK(set.eigen_momenta[1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(set.method == eigen_method::fd_oracle);
}

TEST_CASE("oracle reproduces the free spectrum") {
    const auto V = testpot::zero();
    const auto set =
        fd_oracle_eigenvalues(V, pi, 0.5, 10.0, default_oracle_config(pi, 10.0));
    REQUIRE(set.size() == 3);
    const double expect[] = {1.0, 4.0, 9.0};
    for (int i = 0; i < 3; ++i)
        CHECK(set.eigen_energies[i] ==
              doctest::Approx(expect[i]).epsilon(1e-6));
}

TEST_CASE("both routes agree on decaying potentials") {
    struct scenario {
        const potential V;
        double X;
    };
    const scenario cases[] = {{testpot::exponential(4.0, 1.0), 30.0},
                              {testpot::wigner(2.0, 2.0, 1.0), 40.0}};
    for (const auto& [V, X] : cases) {
        const double E_lo = 0.5, E_hi = 20.0;
        const auto phase = eigenvalues_in_window(V, X, std::sqrt(E_lo),
                                                 std::sqrt(E_hi));
        const auto oracle =
            fd_oracle_eigenvalues(V, X, E_lo, E_hi,
                                  default_oracle_config(X, E_hi));
        REQUIRE(phase.size() == oracle.size());
        for (std::size_t i = 0; i < phase.size(); ++i)
            CHECK(phase.eigen_energies[i] ==
                  doctest::Approx(oracle.eigen_energies[i]).epsilon(1e-4));
    }
}

TEST_CASE("consecutive momentum spacings obey the integral bound") {
    const auto V = testpot::step(1.0, 0.5);
    const double X = 50.0, k_lo = 1.0;
    const auto set = eigenvalues_in_window(V, X, k_lo, 6.0);
    REQUIRE(set.size() >= 10);
    const double cap =
        pi / X + 2.0 / (k_lo * X) * V.cumulative_abs(X) + 1e-9;
    for (std::size_t i = 1; i < set.size(); ++i)
        CHECK(set.eigen_momenta[i] - set.eigen_momenta[i - 1] <= cap);
}

TEST_CASE("residuals are certified against a tighter refinement") {
    const auto V = testpot::exponential(4.0, 1.0);
    solver_options loose;
    solver_options tight;
    tight.root_tol = loose.root_tol / 10.0;
    const auto a = eigenvalues_in_window(V, 30.0, 1.0, 4.0, loose);
    const auto b = eigenvalues_in_window(V, 30.0, 1.0, 4.0, tight);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() > 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.residuals[i] < loose.root_tol);
        CHECK(b.residuals[i] < tight.root_tol);
        CHECK(std::abs(a.eigen_momenta[i] - b.eigen_momenta[i]) < 1e-9);
    }
}

TEST_CASE("oracle converges at second order under mesh halving") {
    const auto V = testpot::exponential(4.0, 1.0);
    const double X = 30.0;
    auto run = [&](double h) {
        oracle_config cfg;
        cfg.mesh_sizes = {h};
        cfg.extrapolate = false;
        return fd_oracle_eigenvalues(V, X, 0.5, 20.0, cfg);
    };
    const auto coarse = run(0.05), mid = run(0.025), fine = run(0.0125);
    auto nearest = [](const eigenvalue_set& set, double E) {
        double best = set.eigen_energies[0];
        for (double cand : set.eigen_energies)
            if (std::abs(cand - E) < std::abs(best - E)) best = cand;
        return best;
    };
    int matched = 0;
    for (double E : fine.eigen_energies) {
        if (E < 1.0 || E > 18.0) continue;  // stay clear of window edges
        const double d1 = nearest(coarse, E) - nearest(mid, E);
        const double d2 = nearest(mid, E) - E;
        const double ratio = d1 / d2;
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
        ++matched;
    }
    CHECK(matched >= 10);
}

TEST_CASE("crossing counts match the window solver") {
    const auto V = testpot::exponential(4.0, 1.0);
    const double X = 30.0;
    const int below = crossing_count(V, X, 0.05);
    const int upto = crossing_count(V, X, 4.5);
    const auto set = eigenvalues_in_window(V, X, 0.05, 4.5);
    CHECK(upto - below == long(set.size()));

    const auto Z = testpot::zero();
    CHECK(crossing_count(Z, pi, 3.5) == 3);
    CHECK(crossing_count(Z, pi, 0.5) == 0);
    CHECK_THROWS_AS(crossing_count(Z, pi, 1.0), ambiguous_error);
}

TEST_CASE("degenerate windows return empty with a warning") {
    const auto V = testpot::zero();
    const auto set = eigenvalues_in_window(V, pi, 2.0, 2.0 + 1e-12);
    CHECK(set.size() == 0);
    REQUIRE(set.warnings.size() == 1);
}

TEST_CASE("invalid arguments are rejected") {
    const auto V = testpot::zero();
    CHECK_THROWS_AS(eigenvalues_in_window(V, -1.0, 1.0, 2.0), argument_error);
    CHECK_THROWS_AS(eigenvalues_in_window(V, pi, 0.0, 2.0), argument_error);
    CHECK_THROWS_AS(eigenvalues_in_window(V, pi, 3.0, 2.0), argument_error);
    oracle_config empty_cfg;
    CHECK_THROWS_AS(fd_oracle_eigenvalues(V, pi, 0.0, 1.0, empty_cfg),
                    argument_error);
    oracle_config increasing;
    increasing.mesh_sizes = {0.01, 0.02};
    CHECK_THROWS_AS(fd_oracle_eigenvalues(V, pi, 0.0, 1.0, increasing),
                    argument_error);
}
