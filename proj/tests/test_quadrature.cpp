#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "diracb/quadrature.hpp"

using namespace diracb;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("adaptive engine reproduces closed-form integrals") {
    const auto q1 = integrate_adaptive(
        [](double x) { return x * x * x / ((1 + x * x) * (1 + x * x)); }, 0.0, 1.0);
    CHECK(q1.value == Approx(0.5 * std::log(2.0) - 0.25).epsilon(1e-12));
    CHECK(q1.error_estimate <= 1e-9);

    const auto q2 = integrate_adaptive(
        [](double w) { return std::pow(1.0 - w * w, 1.5); }, 0.0, 1.0);
    CHECK(q2.value == Approx(3.0 * kPi / 16.0).epsilon(1e-12));

    const auto q3 = integrate_adaptive(
        [](double w) { return std::pow(1.0 - w * w, 2.5); }, 0.0, 1.0);
    CHECK(q3.value == Approx(5.0 * kPi / 32.0).epsilon(1e-12));
}

TEST_CASE("adaptive engine on the zero function") {
    const auto q = integrate_adaptive([](double) { return 0.0; }, 0.0, 1.0);
    CHECK(q.value == 0.0);
    CHECK(q.error_estimate == 0.0);
    CHECK(q.evaluations >= 15);
}

TEST_CASE("adaptive engine is linear within tolerance") {
    auto f = [](double x) { return std::exp(-x) * std::sin(3 * x); };
    auto g = [](double x) { return 1.0 / (1.0 + x * x); };
    const double alpha = 2.75, beta = -1.25;
    QuadratureOptions opt;
    opt.tol = 1e-11;
    const double lhs =
        integrate_adaptive([&](double x) { return alpha * f(x) + beta * g(x); }, 0.0, 4.0, opt)
            .value;
    const double rhs = alpha * integrate_adaptive(f, 0.0, 4.0, opt).value +
                       beta * integrate_adaptive(g, 0.0, 4.0, opt).value;
    CHECK(lhs == Approx(rhs).margin(2e-11 * (1 + std::abs(lhs))));
}

TEST_CASE("adaptive engine reports the failing subinterval") {
    QuadratureOptions opt;
    opt.tol = 1e-12;
    opt.max_depth = 12;
    try {
        integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, opt);
        FAIL("expected nonconvergence");
    } catch (const QuadratureError& e) {
        CHECK(e.worst_lo >= 0.0);
        CHECK(e.worst_hi <= 1.0 / (1 << 11));
        CHECK(e.worst_error > 0.0);
    }
}

TEST_CASE("adaptive engine rejects bad arguments") {
    CHECK_THROWS_AS(integrate_adaptive([](double) { return 0.0; }, 1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("periodic rule hits the tube closed forms") {
    // (1/2pi) int (1 - b cos)^(-2) = (1-b^2)^(-3/2)
    const double b = 0.5;
    const double v = integrate_periodic(
        [b](double p) { return std::pow(1.0 - b * std::cos(p), -2.0); }, 2 * kPi, 512);
    CHECK(v / (2 * kPi) == Approx(std::pow(0.75, -1.5)).epsilon(1e-13));

    // int sin^2/(1 - a cos) = (2 pi / a^2)(1 - sqrt(1-a^2)) at a = 0.6
    const double a = 0.6;
    const double s = integrate_periodic(
        [a](double p) { return std::sin(p) * std::sin(p) / (1.0 - a * std::cos(p)); },
        2 * kPi, 512);
    CHECK(s == Approx(2 * kPi / (a * a) * (1.0 - std::sqrt(1.0 - a * a))).epsilon(1e-13));

    CHECK(integrate_periodic([](double p) { return std::cos(p); }, 2 * kPi, 64) ==
          Approx(0.0).margin(1e-14));
}

TEST_CASE("periodic rule integrates low-degree trigonometric modes exactly") {
    const int n = 32;
    for (int k = 1; k < n / 2; ++k) {
        const double v =
            integrate_periodic([k](double p) { return std::cos(k * p); }, 2 * kPi, n);
        CHECK(v == Approx(0.0).margin(1e-12));
    }
    // constant mode: exact total
    CHECK(integrate_periodic([](double) { return 1.0; }, 2 * kPi, n) ==
          Approx(2 * kPi).epsilon(1e-15));
}

TEST_CASE("periodic rule rejects non-finite samples and bad n") {
    CHECK_THROWS_AS(integrate_periodic([](double p) { return 1.0 / std::sin(p); }, 2 * kPi, 16),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_periodic([](double) { return 1.0; }, 2 * kPi, 4),
                    std::invalid_argument);
}

TEST_CASE("periodic auto-doubling stabilizes peaked integrands") {
    const double b = 0.9;
    const auto q = integrate_periodic_auto(
        [b](double p) { return std::pow(1.0 - b * std::cos(p), -2.0); }, 2 * kPi, 1e-12);
    CHECK(q.value / (2 * kPi) == Approx(std::pow(1 - b * b, -1.5)).epsilon(1e-11));
}

TEST_CASE("semi-infinite split reproduces standard identities") {
    const auto q1 = integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, 0.0);
    CHECK(q1.value == Approx(kPi / 2).epsilon(1e-12));

    const auto q2 = integrate_semi_infinite(
        [](double x) { return 4.0 * x / ((1 + x * x) * (1 + x * x)); }, 0.0);
    CHECK(q2.value == Approx(2.0).epsilon(1e-12));

    const auto q3 = integrate_semi_infinite([](double) { return 0.0; }, 0.0);
    CHECK(q3.value == 0.0);
}

TEST_CASE("semi-infinite value equals the sum of its two pieces") {
    auto f = [](double x) { return std::exp(-x); };
    QuadratureOptions opt;
    const auto whole = integrate_semi_infinite(f, 0.0, opt);
    const auto head = integrate_adaptive(f, 0.0, 1.0, opt);
    const auto tail = integrate_adaptive(
        [&f](double u) { return f(1.0 / u) / (u * u); }, 0.0, 1.0, opt);
    CHECK(whole.value == head.value + tail.value);
    CHECK(whole.value == Approx(1.0).epsilon(1e-10));
}
