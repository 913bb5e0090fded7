#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace diracb {

/// Result of a controlled numerical integration.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
};

struct QuadratureOptions {
    double tol = 1e-10;
    int max_depth = 60;
};

/// Thrown when the adaptive subdivision cannot reach the requested tolerance.
/// Carries the subinterval that failed to converge.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double lo, double hi, double err)
        : std::runtime_error(what + " on [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "], error estimate " +
                             std::to_string(err)),
          worst_lo(lo), worst_hi(hi), worst_error(err) {}

    double worst_lo;
    double worst_hi;
    double worst_error;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss on [-1,1].  All nodes are
// interior, so integrable endpoint behavior needs no special casing.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct GK15Estimate {
    double value;
    double error;
};

template <class F>
GK15Estimate gk15(F& f, double lo, double hi, std::int64_t& evaluations) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double kronrod = kGK15WeightsK[7] * f(center);
    double gauss = kGK15WeightsG[3] * f(center);
    for (int j = 0; j < 7; ++j) {
        const double fl = f(center - half * kGK15Nodes[j]);
        const double fr = f(center + half * kGK15Nodes[j]);
        kronrod += kGK15WeightsK[j] * (fl + fr);
        if (j % 2 == 1) gauss += kGK15WeightsG[j / 2] * (fl + fr);
    }
    evaluations += 15;
    return {kronrod * half, std::abs(kronrod - gauss) * half};
}

template <class F>
double adaptive_recurse(F& f, double lo, double hi, double tol_here, int depth,
                        const QuadratureOptions& opt, double noise_floor,
                        QuadratureResult& out) {
    const GK15Estimate est = gk15(f, lo, hi, out.evaluations);
    if (!std::isfinite(est.value))
        throw QuadratureError("non-finite quadrature estimate", lo, hi, est.error);
    if (est.error <= tol_here || est.error <= noise_floor) {
        out.error_estimate += est.error;
        return est.value;
    }
    if (depth >= opt.max_depth)
        throw QuadratureError("adaptive quadrature depth exhausted", lo, hi, est.error);
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi))
        throw QuadratureError("interval collapsed below machine resolution", lo, hi, est.error);
    return adaptive_recurse(f, lo, mid, 0.5 * tol_here, depth + 1, opt, noise_floor, out) +
           adaptive_recurse(f, mid, hi, 0.5 * tol_here, depth + 1, opt, noise_floor, out);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [lo, hi].  The tolerance is
/// interpreted relative to max(1, |integral|); the returned error estimate is
/// the sum of the accepted per-interval Kronrod-Gauss differences.
template <class F>
    requires std::invocable<F&, double>
QuadratureResult integrate_adaptive(F&& f, double lo, double hi,
                                    QuadratureOptions opt = {}) {
    if (!(lo < hi)) throw std::invalid_argument("integrate_adaptive: requires lo < hi");
    if (!(opt.tol > 0)) throw std::invalid_argument("integrate_adaptive: requires tol > 0");
    QuadratureResult out;
    std::int64_t scratch = 0;
    const detail::GK15Estimate whole = detail::gk15(f, lo, hi, scratch);
    const double scale = std::isfinite(whole.value) ? std::max(1.0, std::abs(whole.value)) : 1.0;
    const double tol_eff = opt.tol * scale;
    const double noise_floor = 16.0 * std::numeric_limits<double>::epsilon() * scale;
    out.value = detail::adaptive_recurse(f, lo, hi, tol_eff, 0, opt, noise_floor, out);
    out.evaluations += scratch;
    return out;
}

/// Equal-spaced trapezoid value for a smooth periodic integrand; spectrally
/// accurate, exact for trigonometric polynomials of degree < n.
template <class F>
    requires std::invocable<F&, double>
double integrate_periodic(F&& f, double period, int n) {
    if (!(period > 0)) throw std::invalid_argument("integrate_periodic: requires period > 0");
    if (n < 8) throw std::invalid_argument("integrate_periodic: requires n >= 8");
    const double h = period / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = f(i * h);
        if (!std::isfinite(v))
            throw std::invalid_argument("integrate_periodic: non-finite sample");
        sum += v;
    }
    return sum * h;
}

/// Doubles the periodic-rule resolution until successive values agree within
/// tol relative to max(1, |value|).
template <class F>
    requires std::invocable<F&, double>
QuadratureResult integrate_periodic_auto(F&& f, double period, double tol,
                                         int n0 = 16, int n_max = (1 << 20)) {
    QuadratureResult out;
    int n = std::max(8, n0);
    double prev = integrate_periodic(f, period, n);
    out.evaluations += n;
    while (n < n_max) {
        n *= 2;
        const double next = integrate_periodic(f, period, n);
        out.evaluations += n;
        const double diff = std::abs(next - prev);
        if (diff <= tol * std::max(1.0, std::abs(next))) {
            out.value = next;
            out.error_estimate = diff;
            return out;
        }
        prev = next;
    }
    throw QuadratureError("periodic rule did not stabilize", 0.0, period, std::abs(prev));
}

/// Integral over [lo, inf).  Splits at 1 and folds the tail onto (0,1] by the
/// substitution x -> 1/x, then reuses the adaptive engine on both pieces.
template <class F>
    requires std::invocable<F&, double>
QuadratureResult integrate_semi_infinite(F&& f, double lo, QuadratureOptions opt = {}) {
    if (!(lo >= 0)) throw std::invalid_argument("integrate_semi_infinite: requires lo >= 0");
    auto tail = [&f](double u) {
        const double x = 1.0 / u;
        return f(x) * x * x;
    };
    QuadratureResult out;
    if (lo < 1.0) {
        const QuadratureResult head = integrate_adaptive(f, lo, 1.0, opt);
        const QuadratureResult folded = integrate_adaptive(tail, 0.0, 1.0, opt);
        out.value = head.value + folded.value;
        out.error_estimate = head.error_estimate + folded.error_estimate;
        out.evaluations = head.evaluations + folded.evaluations;
    } else {
        out = integrate_adaptive(tail, 0.0, 1.0 / lo, opt);
    }
    return out;
}

}  // namespace diracb
