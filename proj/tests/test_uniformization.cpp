#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "diracb/quadrature.hpp"
#include "diracb/uniformization.hpp"

using namespace diracb;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: classical RK4 on dw/dt = -(1-w^2)/Delta_a^{1/2}(w),
// t = ln x, from (t, w) = (0, 0) down to t = ln x.  No quadrature, no
// inversion; shares nothing with the ProfileSolution path.
double rk4_profile(double a, double x, int steps = 40000) {
    const double t_end = std::log(x);
    const double h = t_end / steps;
    auto f = [a](double w) { return -(1.0 - w * w) / std::sqrt(delta_a(a, w)); };
    double w = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double k1 = f(w);
        const double k2 = f(w + 0.5 * h * k1);
        const double k3 = f(w + 0.5 * h * k2);
        const double k4 = f(w + h * k3);
        w += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return w;
}

// Independent I1 route: integrate over w instead of x, with
// t(w) = -int_0^w Delta^{1/2}/(1-u^2) du and dt/dw as the Jacobian.
double i1_w_route(double a, double tol = 1e-9) {
    QuadratureOptions opt{tol, 60};
    auto t_of_w = [a, &opt](double w) {
        if (w == 0.0) return 0.0;
        return -integrate_adaptive(
                    [a](double u) { return std::sqrt(delta_a(a, u)) / (1.0 - u * u); }, 0.0,
                    w, opt)
                    .value;
    };
    auto integrand = [a, &t_of_w](double w) {
        const double d = std::sqrt(delta_a(a, w));
        const double r = w / d + std::tanh(t_of_w(w));
        return r * r * d / (1.0 - w * w);
    };
    return kPi * integrate_adaptive(integrand, 0.0, 1.0, opt).value;
}

}  // namespace

TEST_CASE("round-sphere profile matches the closed form") {
    const ProfileSolution sol(1.0);
    for (double x = 0.1; x < 0.95; x += 0.1)
        CHECK(sol.value(x) == Approx((1 - x * x) / (1 + x * x)).margin(1e-8));
}

TEST_CASE("profile vanishes at x = 1 and has the inversion symmetry") {
    for (double a : {0.2, 0.5, 1.0, 2.0, 5.0}) {
        const ProfileSolution sol(a);
        CHECK(sol.value(1.0) == 0.0);
        for (double x = 0.1; x < 0.95; x += 0.1)
            CHECK(std::abs(sol.value(x) + sol.value(1.0 / x)) <= 1e-8);
    }
}

TEST_CASE("profile stays inside the analytic brackets") {
    const int n = 50;
    for (double a : {0.2, 0.5}) {
        const ProfileSolution sol(a);
        const double p = 2.0 / std::sqrt(1.0 - a * a);
        for (int i = 1; i <= n; ++i) {
            const double x = static_cast<double>(i) / (n + 1);
            const double w = sol.value(x);
            CHECK(w >= (1 - x * x) / (1 + x * x) - 1e-9);
            CHECK(w * w <= 1.0 - std::pow(x, p) + 1e-9);
        }
    }
    for (double a : {2.0, 5.0}) {
        const ProfileSolution sol(a);
        for (int i = 1; i <= n; ++i) {
            const double x = static_cast<double>(i) / (n + 1);
            const double w = sol.value(x);
            const double xa = std::pow(x, 2.0 / a);
            CHECK(w >= (1 - xa) / (1 + xa) - 1e-9);
            CHECK(w <= (1 - x * x) / (1 + x * x) + 1e-9);
        }
    }
}

TEST_CASE("profile satisfies the separable first-order equation") {
    for (double a : {0.2, 0.5, 2.0, 5.0}) {
        const ProfileSolution sol(a);
        double worst = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double x = 0.05 + 0.9 * (i - 1) / 99.0;
            const double h = 1e-3 * x;
            const double w = sol.value(x);
            const double dw = (-sol.value(x + 2 * h) + 8 * sol.value(x + h) -
                               8 * sol.value(x - h) + sol.value(x - 2 * h)) /
                              (12 * h);
            const double residual =
                std::sqrt(delta_a(a, w)) * dw / (1.0 - w * w) + 1.0 / x;
            worst = std::max(worst, std::abs(residual));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("profile agrees with an independent RK4 integration") {
    CHECK(ProfileSolution(0.5).value(0.3) == Approx(rk4_profile(0.5, 0.3)).margin(1e-9));
    CHECK(ProfileSolution(2.0).value(0.5) == Approx(rk4_profile(2.0, 0.5)).margin(1e-9));
    CHECK(ProfileSolution(5.0).value(0.7) == Approx(rk4_profile(5.0, 0.7)).margin(1e-9));
}

TEST_CASE("conformal factor h^4") {
    const ProfileSolution round(1.0);
    for (double x : {0.2, 0.7, 1.0, 1.9})
        CHECK(conformal_factor_h4(round, x) == Approx(1.0).margin(1e-10));

    const ProfileSolution sol(2.0);
    for (double x : {0.25, 0.6, 0.85})
        CHECK(conformal_factor_h4(sol, x) ==
              Approx(conformal_factor_h4(sol, 1.0 / x)).epsilon(1e-9));

    // oracle value via the RK4 profile
    const double w = rk4_profile(2.0, 0.5);
    const double expect = (1 - w * w) * 1.5625 / 1.0;  // (1+x^2)^2/(4x^2) = 25/16 at x=1/2
    CHECK(conformal_factor_h4(sol, 0.5) == Approx(expect).margin(1e-8));
}

TEST_CASE("I1 vanishes on the round sphere") {
    CHECK(I1(1.0) <= 1e-8);
}

TEST_CASE("I1 approaches its small-a limit pi(2 ln 2 - 1)") {
    const double limit = kPi * (2 * std::log(2.0) - 1.0);
    CHECK(I1(0.01) == Approx(limit).epsilon(0.05));
}

TEST_CASE("I1 agrees with the independent w-substitution route") {
    for (double a : {0.5, 4.0}) {
        const double direct = I1(a, 1e-10);
        CHECK(direct == Approx(i1_w_route(a)).epsilon(1e-7));
    }
}

TEST_CASE("I1 obeys the corrected large-a estimate") {
    // The three-part split bounds I1 by the x^3/(1+x^2)^2 term plus the
    // bracket-estimate integral, whose value is a^2 acosh(a)/sqrt(a^2-1)
    // (the nonpositive cross term is dropped).
    const double a = 4.0;
    const double first =
        4 * kPi *
        integrate_adaptive([](double x) { return x * x * x / std::pow(1 + x * x, 2.0); },
                           0.0, 1.0)
            .value;
    const double third = kPi * a * a * std::acosh(a) / std::sqrt(a * a - 1.0);
    CHECK(I1(a) <= first + third);
}

TEST_CASE("w / Delta^{1/2}(w) is increasing in w, capped at 1, decreasing in a") {
    for (double a : {2.0, 5.0}) {
        double prev = 0.0;
        for (double w = 0.05; w < 1.0; w += 0.05) {
            const double r = w / std::sqrt(delta_a(a, w));
            CHECK(r >= prev);
            CHECK(r <= 1.0 + 1e-15);
            prev = r;
        }
    }
    for (double w : {0.3, 0.8}) {
        CHECK(w / std::sqrt(delta_a(2.0, w)) > w / std::sqrt(delta_a(5.0, w)));
    }
}

TEST_CASE("tube uniformization angle") {
    const TubeParam t(1.0, 0.5);
    const double A = tube_psi_period(t);
    CHECK(tube_phi(t, 0.0) == Approx(0.0).margin(1e-14));
    CHECK(tube_phi(t, A) == Approx(2 * kPi).epsilon(1e-13));
    CHECK(tube_phi(t, 0.5 * A) == Approx(kPi).epsilon(1e-13));
    CHECK_THROWS_AS(tube_phi(t, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(tube_phi(t, A + 0.5), std::invalid_argument);

    // monotone branch
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double phi = tube_phi(t, A * i / 200.0);
        CHECK(phi >= prev);
        prev = phi;
    }

    // r*kappa -> 0 collapses to arc length
    const TubeParam thin(1e-8, 0.5);
    for (double frac : {0.1, 0.4, 0.8}) {
        const double psi = frac * tube_psi_period(thin);
        CHECK(tube_phi(thin, psi) == Approx(psi / thin.r).epsilon(1e-6));
    }
}

TEST_CASE("tube conformal factor h^2") {
    for (double b : {0.1, 0.5, 0.9}) {
        const TubeParam t(1.0, b);
        const double A = tube_psi_period(t);
        CHECK(tube_h2(t, 0.0) == Approx(1.0 - b).epsilon(1e-13));
        CHECK(tube_h2(t, 0.5 * A) == Approx(1.0 + b).epsilon(1e-13));
        // the trigonometric and algebraic expressions agree pointwise
        for (int i = 0; i <= 400; ++i) {
            const double psi = A * i / 400.0;
            const double trig = 1.0 - b * std::cos(tube_phi(t, psi));
            CHECK(tube_h2(t, psi) == Approx(trig).margin(1e-10));
        }
    }
}

TEST_CASE("tube angle solves r phi' = h^2") {
    const TubeParam t(1.0, 0.6);
    const double A = tube_psi_period(t);
    for (double frac : {0.15, 0.35, 0.55, 0.75, 0.95}) {
        const double psi = frac * A;
        const double h = 1e-6 * A;
        const double dphi = (tube_phi(t, psi + h) - tube_phi(t, psi - h)) / (2 * h);
        CHECK(t.r * dphi == Approx(tube_h2(t, psi)).epsilon(1e-7));
    }
}
