#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "diracb/bounds.hpp"
#include "diracb/optimize.hpp"

using namespace diracb;
using Catch::Approx;

TEST_CASE("golden section on a parabola") {
    const auto r = minimize_scalar([](double b) { return (b - 2.0) * (b - 2.0); }, 0.0,
                                   10.0, 1e-10);
    CHECK(r.beta_star == Approx(2.0).margin(1e-8));
    CHECK(r.value == Approx(0.0).margin(1e-15));
    CHECK(r.bracket_lo == 0.0);
    CHECK(r.bracket_hi == 10.0);
    CHECK(r.iterations > 0);
}

TEST_CASE("golden section finds the small-a limit optimum") {
    const auto r = minimize_scalar([](double b) { return beta_limit_small_a(b); }, 0.51,
                                   10.0, 1e-10);
    CHECK(r.beta_star == Approx(0.5 + 1.0 / std::sqrt(2.0)).margin(1e-7));
    CHECK(r.value == Approx(3.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("golden section pins monotone objectives at the boundary") {
    const auto r = minimize_scalar([](double b) { return beta_limit_large_a(b, 1e-8); },
                                   0.6, 20.0, 1e-6);
    CHECK(r.beta_star == Approx(20.0).margin(1e-4));
    CHECK(r.value > 0.25);
    CHECK(r.value < 0.26);
}

TEST_CASE("golden section argument validation") {
    CHECK_THROWS_AS(minimize_scalar([](double b) { return b; }, 1.0, 1.0, 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(minimize_scalar([](double) { return std::nan(""); }, 0.0, 1.0, 1e-8),
                    std::domain_error);
}

TEST_CASE("returned value is the objective at beta_star") {
    auto obj = [](double b) { return std::cos(b) + 0.1 * b; };
    const auto r = minimize_scalar(obj, 0.0, 6.0, 1e-9);
    CHECK(r.value == obj(r.beta_star));
}

TEST_CASE("optimize_beta on the round sphere returns 1") {
    const auto r = optimize_beta(1.0, 0.55, 4.0, 1e-6, 1e-9);
    CHECK(r.value == Approx(1.0).margin(1e-7));
}

TEST_CASE("optimize_beta near the disk limit") {
    const auto r = optimize_beta(1e-3);
    CHECK(r.value == Approx(3.0 + 2.0 * std::sqrt(2.0)).epsilon(0.02));
    CHECK(r.beta_star == Approx(0.5 + 1.0 / std::sqrt(2.0)).margin(0.05));
}

TEST_CASE("optimize_beta for a long ellipsoid approaches 1/4") {
    const auto r = optimize_beta(1e3, 0.55, 20.0, 1e-6, 1e-9);
    CHECK(r.value == Approx(0.25).epsilon(0.05));
}

TEST_CASE("optimum never loses to beta = 1") {
    for (double a : {0.05, 0.3, 1.0, 2.0, 10.0}) {
        const auto r = optimize_beta(a, 0.55, 20.0, 1e-6, 1e-9);
        CHECK(r.value <= ellipsoid_beta_bound(a, 1.0, 1e-9).value * (1 + 1e-9));
    }
}

TEST_CASE("optimize_beta validates its bracket") {
    CHECK_THROWS_AS(optimize_beta(1.0, 0.4, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(optimize_beta(1.0, 3.0, 2.0), std::invalid_argument);
}
