#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "diracb/geometry.hpp"
#include "diracb/quadrature.hpp"

namespace diracb {

/// Profile w_a(x) of the conformal uniformization of E(a):
///
///     Delta_a^{1/2}(w) / (1 - w^2) * w'(x) = -1/x,   w(0) = 1, w(inf) = -1.
///
/// Separating variables with t = ln x and w = tanh(u) turns the profile into
/// the inversion of the smooth, strictly increasing map
///
///     tau(u) = int_0^u Delta_a^{1/2}(tanh v) dv  =  -ln x,
///
/// which this class tabulates once (graded cells, one Kronrod pass per cell)
/// and inverts on demand with a safeguarded Newton iteration.  w_a(1) = 0 is
/// exact by construction and w_a(1/x) = -w_a(x) extends the solution to x > 1.
class ProfileSolution {
public:
    explicit ProfileSolution(double a, double tol = 1e-12) : a_(a), tol_(tol) {
        if (!(a > 0)) throw std::invalid_argument("ProfileSolution: requires a > 0");
        build_table();
    }

    double a() const { return a_; }

    /// Smallest x this solution resolves; queries below are clamped.
    static constexpr double x_min() { return 1e-8; }

    /// w_a(x) for x > 0.
    double value(double x) const {
        if (!(x > 0)) throw std::invalid_argument("ProfileSolution: requires x > 0");
        if (x == 1.0) return 0.0;
        if (x > 1.0) return -value(1.0 / x);
        x = std::max(x, x_min());
        return std::tanh(invert(-std::log(x)));
    }

private:
    double integrand(double v) const { return std::sqrt(delta_a(a_, std::tanh(v))); }

    // Kronrod pass over [lo, hi]; the integrand is smooth so one pass per
    // graded cell reaches machine accuracy.
    double cell_integral(double lo, double hi) const {
        std::int64_t evals = 0;
        auto f = [this](double v) { return integrand(v); };
        return detail::gk15(f, lo, hi, evals).value;
    }

    void build_table() {
        // Cells grow geometrically from the small-u scale of the integrand
        // (~min(a, 1/a)) up to a cap; tau must cover -ln(x_min).
        const double target = -std::log(x_min()) + 1.0;
        const double scale0 = std::clamp(std::min(a_, 1.0 / a_), 1e-6, 1.0);
        u_.push_back(0.0);
        tau_.push_back(0.0);
        double u = 0.0, tau = 0.0;
        while (tau < target) {
            const double du = std::min(0.02, 0.05 * std::max(scale0, u));
            const double next = u + du;
            tau += cell_integral(u, next);
            u = next;
            u_.push_back(u);
            tau_.push_back(tau);
        }
    }

    // Solve tau(u) = T for the tabulated monotone map.
    double invert(double T) const {
        if (T <= 0.0) return 0.0;
        if (T >= tau_.back()) return u_.back();
        const auto it = std::upper_bound(tau_.begin(), tau_.end(), T);
        std::size_t k = static_cast<std::size_t>(it - tau_.begin()) - 1;
        double lo = u_[k], hi = u_[k + 1];
        double u = 0.5 * (lo + hi);
        for (int iter = 0; iter < 60; ++iter) {
            const double g = tau_[k] + cell_integral(u_[k], u) - T;
            if (g > 0)
                hi = u;
            else
                lo = u;
            const double slope = integrand(u);
            double next = u - g / slope;
            if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - u) <= tol_ * std::max(1.0, u)) return next;
            u = next;
        }
        return u;
    }

    double a_;
    double tol_;
    std::vector<double> u_;
    std::vector<double> tau_;
};

inline ProfileSolution solve_profile(double a, double tol = 1e-12) {
    return ProfileSolution(a, tol);
}

/// h_a^4(x) = (1 - w_a^2(x)) (1+x^2)^2 / (4 x^2).
inline double conformal_factor_h4(const ProfileSolution& sol, double x) {
    if (!(x > 0)) throw std::invalid_argument("conformal_factor_h4: requires x > 0");
    const double w = sol.value(x);
    const double xp = 1.0 + x * x;
    return (1.0 - w * w) * xp * xp / (4.0 * x * x);
}

/// d/dx log h_a(x) = (1/(2x)) [ w/Delta^{1/2}(w) + (x^2-1)/(x^2+1) ].
inline double log_h_derivative(const ProfileSolution& sol, double x) {
    if (!(x > 0)) throw std::invalid_argument("log_h_derivative: requires x > 0");
    const double w = sol.value(x);
    return 0.5 / x * (w / std::sqrt(delta_a(sol.a(), w)) + (x * x - 1.0) / (x * x + 1.0));
}

/// I1(a) = pi * int_0^1 (1/x) ( w_a/Delta_a^{1/2}(w_a) + (x^2-1)/(x^2+1) )^2 dx,
/// the gradient integral of the rotationally symmetric uniformization of E(a)
/// reduced to [0,1] by the w_a(1/x) = -w_a(x) symmetry.
inline double I1(const ProfileSolution& sol, double tol = 1e-10) {
    const double a = sol.a();
    auto integrand = [&sol, a](double x) {
        const double w = sol.value(x);
        const double r = w / std::sqrt(delta_a(a, w)) + (x * x - 1.0) / (x * x + 1.0);
        return r * r / x;
    };
    QuadratureOptions opt;
    opt.tol = tol;
    const auto q = integrate_adaptive(integrand, 0.0, 1.0, opt);
    return std::numbers::pi * q.value;
}

inline double I1(double a, double tol = 1e-10) { return I1(ProfileSolution(a), tol); }

/// Half-period A of the tube uniformization coordinate psi.
inline double tube_psi_period(const TubeParam& t) {
    const double b = t.r * t.kappa;
    return 2.0 * std::numbers::pi * t.r / std::sqrt(1.0 - b * b);
}

/// Uniformizing angle phi(psi) on [0, A], the continuous monotone branch of
///
///     tan(phi/2) = sqrt((1-rk)/(1+rk)) tan( sqrt(1-r^2 k^2) psi / (2r) ).
///
/// The tangent argument is split into half-period count and remainder so the
/// branch stays continuous across the tangent poles.
inline double tube_phi(const TubeParam& t, double psi) {
    const double A = tube_psi_period(t);
    if (psi < -1e-12 * A || psi > A * (1.0 + 1e-12))
        throw std::invalid_argument("tube_phi: psi outside [0, A]");
    psi = std::clamp(psi, 0.0, A);
    const double b = t.r * t.kappa;
    const double c = std::sqrt((1.0 - b) / (1.0 + b));
    const double theta = std::sqrt(1.0 - b * b) * psi / (2.0 * t.r);
    const double n = std::round(theta / std::numbers::pi);
    const double rem = theta - n * std::numbers::pi;
    return 2.0 * (n * std::numbers::pi + std::atan2(c * std::sin(rem), std::cos(rem)));
}

/// h^2(psi) = 1 - rk cos(phi(psi)) in the pole-free algebraic form
/// (1-r^2k^2)(1+T^2) / ((1+rk) + (1-rk) T^2) with T = tan(sqrt(1-r^2k^2) psi/(2r)).
inline double tube_h2(const TubeParam& t, double psi) {
    const double A = tube_psi_period(t);
    if (psi < -1e-12 * A || psi > A * (1.0 + 1e-12))
        throw std::invalid_argument("tube_h2: psi outside [0, A]");
    psi = std::clamp(psi, 0.0, A);
    const double b = t.r * t.kappa;
    const double theta = std::sqrt(1.0 - b * b) * psi / (2.0 * t.r);
    const double s = std::sin(theta), c = std::cos(theta);
    // (1+T^2) / ((1+rk) + (1-rk) T^2) written in sin/cos to avoid the pole.
    return (1.0 - b * b) / ((1.0 + b) * c * c + (1.0 - b) * s * s);
}

/// The tube's conformal factor as a torus field over its uniformizing
/// lattice, with analytic gradient and log-Laplacian.
inline ConformalFactorField tube_conformal_factor(const TubeParam& t) {
    const Lattice2 lat = tube_lattice(t);
    const double A = lat.v2.y;
    const double kappa = t.kappa;
    const double r = t.r;
    auto h = [t, A](double, double tt) { return std::sqrt(tube_h2(t, tt * A)); };
    // h'(psi) = (kappa/2) sin(phi) h;  Delta log h = (kappa/(2r)) cos(phi) h^2.
    auto dh_dy = [t, A, kappa](double, double tt) {
        const double psi = tt * A;
        return 0.5 * kappa * std::sin(tube_phi(t, psi)) * std::sqrt(tube_h2(t, psi));
    };
    auto zero = [](double, double) { return 0.0; };
    auto lap = [t, A, kappa, r](double, double tt) {
        const double psi = tt * A;
        return 0.5 * kappa / r * std::cos(tube_phi(t, psi)) * tube_h2(t, psi);
    };
    return ConformalFactorField::closed_form(lat, h, zero, dh_dy, lap);
}

}  // namespace diracb
