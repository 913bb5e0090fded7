#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "diracb/geometry.hpp"
#include "diracb/quadrature.hpp"
#include "diracb/uniformization.hpp"

namespace diracb {

enum class BoundKind {
    lower_lb,
    upper_h2,
    upper_t1,
    upper_t1_beta1_closed,
    upper_t2,
    upper_t3,
    upper_t4_star,
    upper_t4_dstar,
    upper_t4_curv,
    tube_star,
    tube_dstar,
    tube_h2,
    tube_trivial,
};

inline const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::lower_lb: return "lower_lb";
        case BoundKind::upper_h2: return "upper_h2";
        case BoundKind::upper_t1: return "upper_t1";
        case BoundKind::upper_t1_beta1_closed: return "upper_t1_beta1_closed";
        case BoundKind::upper_t2: return "upper_t2";
        case BoundKind::upper_t3: return "upper_t3";
        case BoundKind::upper_t4_star: return "upper_t4_star";
        case BoundKind::upper_t4_dstar: return "upper_t4_dstar";
        case BoundKind::upper_t4_curv: return "upper_t4_curv";
        case BoundKind::tube_star: return "tube_star";
        case BoundKind::tube_dstar: return "tube_dstar";
        case BoundKind::tube_h2: return "tube_h2";
        case BoundKind::tube_trivial: return "tube_trivial";
    }
    return "?";
}

/// One evaluated eigenvalue bound.  `normalized` marks values in units of
/// lambda_1^2 * vol (dimensionless); otherwise units are 1/length^2.
struct BoundValue {
    BoundKind kind;
    double value = 0.0;
    double error_estimate = 0.0;
    bool normalized = false;
};

/// Test functions (f, G) of Theorem 1, with f given as a function of the
/// profile coordinate w.  Missing derivatives fall back to centered
/// differences; an absent G means G == 0.
struct TestFunctionPair {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> G;
    std::function<double(double)> dG;
};

namespace detail {

inline double centered_difference(const std::function<double(double)>& fn, double x,
                                  double max_step) {
    const double h = std::min(1e-6 * (1.0 + std::abs(x)), max_step);
    return (fn(x + h) - fn(x - h)) / (2.0 * h);
}

inline double ratio_error(double num, double num_err, double den, double den_err) {
    return (num_err + std::abs(num / den) * den_err) / std::abs(den);
}

}  // namespace detail

/// 4 pi / vol <= lambda_1^2 on any genus-0 surface.
inline BoundValue lower_bound_genus0(double vol) {
    if (!(vol > 0)) throw std::invalid_argument("lower_bound_genus0: requires vol > 0");
    return {BoundKind::lower_lb, 4.0 * std::numbers::pi / vol, 0.0, false};
}

/// Classical bound int H^2 dM / vol for the ellipsoid E(a).
inline BoundValue classical_H2_bound(const EllipsoidParam& e, double tol = 1e-10) {
    const double a = e.a;
    QuadratureOptions opt{tol, 60};
    const auto num = integrate_adaptive(
        [a](double w) {
            const double d = delta_a(a, w);
            const double dp1 = d + 1.0;
            return 0.25 * a * a * dp1 * dp1 / (d * d * std::sqrt(d));
        },
        0.0, 1.0, opt);
    const auto den = integrate_adaptive(
        [a](double w) { return std::sqrt(delta_a(a, w)); }, 0.0, 1.0, opt);
    return {BoundKind::upper_h2, num.value / den.value,
            detail::ratio_error(num.value, num.error_estimate, den.value, den.error_estimate),
            false};
}

/// Classical bound for the tube, with H = (1-2rk cos)/(2r(1-rk cos)).
inline BoundValue classical_H2_bound(const TubeParam& t, double tol = 1e-10) {
    const double b = t.r * t.kappa;
    const auto q = integrate_periodic_auto(
        [b](double phi) {
            const double u = 1.0 - 2.0 * b * std::cos(phi);
            return u * u / (1.0 - b * std::cos(phi));
        },
        2.0 * std::numbers::pi, tol);
    const double h2_integral = t.circle_length() / (4.0 * t.r) * q.value;
    const double vol = tube_volume(t);
    return {BoundKind::tube_h2, h2_integral / vol, q.error_estimate / vol, false};
}

/// int_{M} H^2 dM for the tube (closed value pi^2/(rk sqrt(1-r^2k^2))).
inline double tube_H2_integral(const TubeParam& t, double tol = 1e-10) {
    const BoundValue b = classical_H2_bound(t, tol);
    return b.value * tube_volume(t);
}

/// Theorem 1 for the ellipsoid with rotationally symmetric test functions:
///
///   lambda_1^2 <= [ int H^2 (f^2 + G^2(f)) + int |grad f|^2 (1 + G'(f)^2) ]
///                 / int (f^2 + G^2(f)),
///
/// with |grad f|^2 = (1-w^2)/Delta_a(w) (df/dw)^2 from the surface metric.
inline BoundValue extrinsic_bound_T1(const EllipsoidParam& e, const TestFunctionPair& tf,
                                     double tol = 1e-10) {
    if (!tf.f) throw std::invalid_argument("extrinsic_bound_T1: missing f");
    const double a = e.a;
    auto df = [&tf](double w) {
        if (tf.df) return tf.df(w);
        return detail::centered_difference(tf.f, w, 0.25 * (1.0 - std::abs(w)) + 1e-300);
    };
    auto G = [&tf](double w) { return tf.G ? tf.G(w) : 0.0; };
    auto dG = [&tf](double w) {
        if (!tf.G) return 0.0;
        if (tf.dG) return tf.dG(w);
        return detail::centered_difference(tf.G, w, 1e-6);
    };

    QuadratureOptions opt{tol, 60};
    const auto num = integrate_adaptive(
        [&](double w) {
            const double d = delta_a(a, w);
            const double sq = std::sqrt(d);
            const double fv = tf.f(w);
            const double gv = G(fv);
            const double dp1 = d + 1.0;
            const double h2 = 0.25 * a * a * dp1 * dp1 / (d * d * d);
            const double dfv = df(w);
            const double grad2 = (1.0 - w * w) / d * dfv * dfv;
            const double dgv = dG(fv);
            return (h2 * (fv * fv + gv * gv) + grad2 * (1.0 + dgv * dgv)) * sq;
        },
        -1.0, 1.0, opt);
    const auto den = integrate_adaptive(
        [&](double w) {
            const double fv = tf.f(w);
            const double gv = G(fv);
            return (fv * fv + gv * gv) * std::sqrt(delta_a(a, w));
        },
        -1.0, 1.0, opt);
    if (!(std::abs(den.value) > 1e-300))
        throw std::domain_error("extrinsic_bound_T1: vanishing denominator");
    return {BoundKind::upper_t1, num.value / den.value,
            detail::ratio_error(num.value, num.error_estimate, den.value, den.error_estimate),
            false};
}

/// Theorem 1 specialized to f_beta = Delta_a^beta(w), G == 0, reduced to [0,1]
/// by the w -> -w symmetry of every integrand.
inline BoundValue ellipsoid_beta_bound(double a, double beta, double tol = 1e-10) {
    if (!(a > 0)) throw std::invalid_argument("ellipsoid_beta_bound: requires a > 0");
    if (!(beta > 0.5))
        throw std::invalid_argument("ellipsoid_beta_bound: requires beta > 1/2");
    QuadratureOptions opt{tol, 60};
    const double oma2 = 1.0 - a * a;
    const auto num_h2 = integrate_adaptive(
        [a, beta](double w) {
            const double d = delta_a(a, w);
            const double dp1 = d + 1.0;
            return 0.25 * a * a * std::pow(d, 2.0 * beta - 2.5) * dp1 * dp1;
        },
        0.0, 1.0, opt);
    const auto num_grad = integrate_adaptive(
        [a, beta, oma2](double w) {
            const double d = delta_a(a, w);
            return 4.0 * beta * beta * oma2 * oma2 * std::pow(d, 2.0 * beta - 2.5) * w * w *
                   (1.0 - w * w);
        },
        0.0, 1.0, opt);
    const auto den = integrate_adaptive(
        [a, beta](double w) { return std::pow(delta_a(a, w), 2.0 * beta + 0.5); }, 0.0,
        1.0, opt);
    const double num = num_h2.value + num_grad.value;
    const double num_err = num_h2.error_estimate + num_grad.error_estimate;
    return {BoundKind::upper_t1, num / den.value,
            detail::ratio_error(num, num_err, den.value, den.error_estimate), false};
}

/// f(a) of the exact beta = 1 formula: log branch for a < 1, arcsin branch for
/// a > 1, series in 1 - a^2 across the junction (both branches equal
/// -artanh(sqrt(1-a^2))/sqrt(1-a^2) as analytic functions of 1 - a^2).
inline double ellipsoid_f_of_a(double a) {
    if (!(a > 0)) throw std::invalid_argument("ellipsoid_f_of_a: requires a > 0");
    const double eta = 1.0 - a * a;
    if (std::abs(eta) < 1e-5)
        return -(1.0 + eta * (1.0 / 3.0 + eta * (1.0 / 5.0 + eta / 7.0)));
    if (a < 1.0) {
        const double u = std::sqrt(eta);
        return std::log((1.0 - u) / a) / u;
    }
    const double s = std::sqrt(-eta);
    return -std::asin(s / a) / s;
}

/// Exact closed form of the beta = 1 bound, continuous across a = 1.
inline BoundValue ellipsoid_beta1_closed_form(double a) {
    const double fa = ellipsoid_f_of_a(a);
    const double a2 = a * a, a4 = a2 * a2, a6 = a4 * a2;
    const double num =
        (2.0 + 13.0 / 8.0 * a2 + 3.0 / 16.0 * a4) +
        (3.5 * a2 - 1.5 * a4 - 3.0 / 16.0 * a6) * fa;
    const double den = (1.0 / 3.0 + 5.0 / 12.0 * a2 + 5.0 / 8.0 * a4) - 5.0 / 8.0 * a6 * fa;
    return {BoundKind::upper_t1_beta1_closed, num / den, 0.0, false};
}

/// limsup_{a->0} of the beta-family bound: 2 beta (2 beta + 1) / (2 beta - 1),
/// minimized at beta = 1/2 + 1/sqrt(2) with value 3 + 2 sqrt(2).
inline double beta_limit_small_a(double beta) {
    if (!(beta > 0.5)) throw std::invalid_argument("beta_limit_small_a: requires beta > 1/2");
    return 2.0 * beta * (2.0 * beta + 1.0) / (2.0 * beta - 1.0);
}

/// limsup_{a->inf}: (1/4) int (1-w^2)^{2b-1/2} / int (1-w^2)^{2b+1/2} over [0,1].
inline double beta_limit_large_a(double beta, double tol = 1e-10) {
    if (!(beta > 0.5)) throw std::invalid_argument("beta_limit_large_a: requires beta > 1/2");
    QuadratureOptions opt{tol, 60};
    const auto num = integrate_adaptive(
        [beta](double w) { return std::pow(1.0 - w * w, 2.0 * beta - 0.5); }, 0.0, 1.0, opt);
    const auto den = integrate_adaptive(
        [beta](double w) { return std::pow(1.0 - w * w, 2.0 * beta + 0.5); }, 0.0, 1.0, opt);
    return 0.25 * num.value / den.value;
}

/// Theorem 2 with the computed uniformization integral: (4 pi + I1) / vol.
inline BoundValue intrinsic_sphere_bound(double vol, double i1) {
    if (!(vol > 0)) throw std::invalid_argument("intrinsic_sphere_bound: requires vol > 0");
    if (i1 < 0) throw std::invalid_argument("intrinsic_sphere_bound: requires i1 >= 0");
    return {BoundKind::upper_t2, (4.0 * std::numbers::pi + i1) / vol, 0.0, false};
}

/// Theorem 2 evaluated directly from a rotationally symmetric conformal
/// factor h on S^2: (4 pi + int |grad h|^2/h^2 dS^2) / int h^4 dS^2.
inline BoundValue conformal_sphere_bound(const SphereConformalFactor& h, double tol = 1e-10) {
    if (!h.h) throw std::invalid_argument("conformal_sphere_bound: missing h");
    auto hv = [&h](double x) {
        const double v = h.h(x);
        if (!(v > 0)) throw std::invalid_argument("conformal_sphere_bound: h must be positive");
        return v;
    };
    auto dh = [&h](double x) {
        if (h.dh_dx) return h.dh_dx(x);
        return detail::centered_difference(h.h, x, 0.5 * x);
    };
    QuadratureOptions opt{tol, 60};
    // |grad h|^2/h^2 dS^2 = x (h'/h)^2 dx dphi in the chart
    const auto grad = integrate_semi_infinite(
        [&](double x) {
            const double r = dh(x) / hv(x);
            return x * r * r;
        },
        0.0, opt);
    const auto vol = integrate_semi_infinite(
        [&](double x) {
            const double v = hv(x);
            const double v2 = v * v;
            const double xp = 1.0 + x * x;
            return v2 * v2 * 4.0 * x / (xp * xp);
        },
        0.0, opt);
    const double pi = std::numbers::pi;
    const double grad_integral = 2.0 * pi * grad.value;
    const double volume = 2.0 * pi * vol.value;
    const double value = (4.0 * pi + grad_integral) / volume;
    const double err = detail::ratio_error(4.0 * pi + grad_integral,
                                           2.0 * pi * grad.error_estimate, volume,
                                           2.0 * pi * vol.error_estimate);
    return {BoundKind::upper_t2, value, err, false};
}

// ---------------------------------------------------------------------------
// Flat-torus conformal machinery
// ---------------------------------------------------------------------------

namespace detail {

using CGrid = std::vector<std::complex<double>>;

// Direct DFT; grids are small enough that O(n^2) per line is fine.
inline void dft_line(const std::complex<double>* in, std::complex<double>* out, int n,
                     bool inverse) {
    const double sign = inverse ? 1.0 : -1.0;
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * std::numbers::pi * k * j / n;
            acc += in[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
}

// forward 2D DFT of row-major (nx, ny) data, normalized on the inverse
inline CGrid dft2(const CGrid& in, int nx, int ny, bool inverse) {
    CGrid tmp(in.size()), out(in.size());
    std::vector<std::complex<double>> line(std::max(nx, ny)), lout(std::max(nx, ny));
    for (int j = 0; j < nx; ++j)
        dft_line(in.data() + static_cast<std::size_t>(j) * ny, tmp.data() + static_cast<std::size_t>(j) * ny, ny, inverse);
    for (int k = 0; k < ny; ++k) {
        for (int j = 0; j < nx; ++j) line[j] = tmp[static_cast<std::size_t>(j) * ny + k];
        dft_line(line.data(), lout.data(), nx, inverse);
        for (int j = 0; j < nx; ++j) out[static_cast<std::size_t>(j) * ny + k] = lout[j];
    }
    return out;
}

struct TorusSamples {
    int nx = 0, ny = 0;
    std::vector<double> h;        // factor values
    std::vector<double> hx, hy;   // Cartesian gradient
    std::vector<double> lap_log;  // Cartesian Laplacian of log h (optional)
};

inline int signed_freq(int m, int n) { return (2 * m <= n) ? m : m - n; }

// Spectral Cartesian derivatives of a periodic scalar sampled on the
// fundamental domain.  Wavevector of mode (m, n) is 2 pi (m v1* + n v2*).
inline void spectral_derivatives(const std::vector<double>& f, int nx, int ny,
                                 const Lattice2& dual, std::vector<double>* fx,
                                 std::vector<double>* fy, std::vector<double>* lap) {
    CGrid in(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) in[i] = f[i];
    const CGrid fhat = dft2(in, nx, ny, false);
    CGrid gx, gy, gl;
    if (fx) gx.resize(f.size());
    if (fy) gy.resize(f.size());
    if (lap) gl.resize(f.size());
    const double two_pi = 2.0 * std::numbers::pi;
    for (int m = 0; m < nx; ++m)
        for (int n = 0; n < ny; ++n) {
            const std::size_t idx = static_cast<std::size_t>(m) * ny + n;
            const int ms = signed_freq(m, nx), ns = signed_freq(n, ny);
            const Vec2 kvec = two_pi * (static_cast<double>(ms) * dual.v1 +
                                        static_cast<double>(ns) * dual.v2);
            // Nyquist modes carry no usable sign for first derivatives.
            const bool nyq = (2 * m == nx) || (2 * n == ny);
            const std::complex<double> i_unit{0.0, 1.0};
            if (fx) gx[idx] = nyq ? 0.0 : fhat[idx] * i_unit * kvec.x;
            if (fy) gy[idx] = nyq ? 0.0 : fhat[idx] * i_unit * kvec.y;
            if (lap) gl[idx] = -norm_sq(kvec) * fhat[idx];
        }
    auto back = [&](CGrid& spec, std::vector<double>* dst) {
        const CGrid real = dft2(spec, nx, ny, true);
        dst->resize(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) (*dst)[i] = real[i].real();
    };
    if (fx) back(gx, fx);
    if (fy) back(gy, fy);
    if (lap) back(gl, lap);
}

inline TorusSamples sample_torus_field(const ConformalFactorField& f, int nx, int ny,
                                       bool need_lap) {
    TorusSamples s;
    const Lattice2 dual = dual_lattice(f.lattice());
    if (f.is_grid()) {
        s.nx = f.nx();
        s.ny = f.ny();
        s.h = f.grid();
    } else {
        s.nx = nx;
        s.ny = ny;
        s.h = f.sample(nx, ny);
    }
    const bool analytic_grad = !f.is_grid() && f.has_analytic_gradient();
    const bool analytic_lap = !f.is_grid() && f.has_analytic_laplacian_log();
    if (analytic_grad) {
        s.hx.resize(s.h.size());
        s.hy.resize(s.h.size());
        for (int j = 0; j < s.nx; ++j)
            for (int k = 0; k < s.ny; ++k) {
                const std::size_t idx = static_cast<std::size_t>(j) * s.ny + k;
                const double ss = static_cast<double>(j) / s.nx;
                const double tt = static_cast<double>(k) / s.ny;
                s.hx[idx] = f.dx(ss, tt);
                s.hy[idx] = f.dy(ss, tt);
            }
    }
    if (need_lap && analytic_lap) {
        s.lap_log.resize(s.h.size());
        for (int j = 0; j < s.nx; ++j)
            for (int k = 0; k < s.ny; ++k) {
                const std::size_t idx = static_cast<std::size_t>(j) * s.ny + k;
                s.lap_log[idx] = f.laplacian_log(static_cast<double>(j) / s.nx,
                                                 static_cast<double>(k) / s.ny);
            }
    }
    if (!analytic_grad || (need_lap && !analytic_lap)) {
        std::vector<double>* fx = analytic_grad ? nullptr : &s.hx;
        std::vector<double>* fy = analytic_grad ? nullptr : &s.hy;
        if (fx) spectral_derivatives(s.h, s.nx, s.ny, dual, fx, fy, nullptr);
        if (need_lap && !analytic_lap) {
            std::vector<double> logh(s.h.size());
            for (std::size_t i = 0; i < s.h.size(); ++i) logh[i] = std::log(s.h[i]);
            spectral_derivatives(logh, s.nx, s.ny, dual, nullptr, nullptr, &s.lap_log);
        }
    }
    return s;
}

struct TorusIntegrals {
    double vol_g = 0;         // int h^4
    double int_h2 = 0;        // int h^2
    double int_h2_inv = 0;    // int h^-2
    double int_h6_inv = 0;    // int h^-6
    double grad2_h2 = 0;      // int |grad h|^2 / h^2
    double grad2_h8 = 0;      // int |grad h|^2 / h^8
    double lap_log_log = 0;   // int lap(log h) log h
    double error = 0;
};

inline TorusIntegrals torus_integrals_at(const ConformalFactorField& f, int nx, int ny,
                                         bool need_lap) {
    const TorusSamples s = sample_torus_field(f, nx, ny, need_lap);
    TorusIntegrals out;
    const double cell = f.lattice().cell_area() / (static_cast<double>(s.nx) * s.ny);
    for (std::size_t i = 0; i < s.h.size(); ++i) {
        const double h = s.h[i];
        const double h2 = h * h, h4 = h2 * h2;
        const double g2 = s.hx[i] * s.hx[i] + s.hy[i] * s.hy[i];
        out.vol_g += h4;
        out.int_h2 += h2;
        out.int_h2_inv += 1.0 / h2;
        out.int_h6_inv += 1.0 / (h4 * h2);
        out.grad2_h2 += g2 / h2;
        out.grad2_h8 += g2 / (h4 * h4);
        if (need_lap) out.lap_log_log += s.lap_log[i] * std::log(h);
    }
    out.vol_g *= cell;
    out.int_h2 *= cell;
    out.int_h2_inv *= cell;
    out.int_h6_inv *= cell;
    out.grad2_h2 *= cell;
    out.grad2_h8 *= cell;
    out.lap_log_log *= cell;
    return out;
}

inline double integrals_distance(const TorusIntegrals& a, const TorusIntegrals& b,
                                 bool need_lap) {
    auto rel = [](double x, double y) {
        return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
    };
    double d = std::max({rel(a.vol_g, b.vol_g), rel(a.int_h2, b.int_h2),
                         rel(a.int_h2_inv, b.int_h2_inv), rel(a.int_h6_inv, b.int_h6_inv),
                         rel(a.grad2_h2, b.grad2_h2), rel(a.grad2_h8, b.grad2_h8)});
    if (need_lap) d = std::max(d, rel(a.lap_log_log, b.lap_log_log));
    return d;
}

/// Periodic tensor-product quadrature of every integral the torus bounds
/// need.  Grids are taken at face value (one shot at their resolution);
/// closed forms go through resolution doubling until the full vector of
/// integrals stabilizes to tol.
inline TorusIntegrals torus_integrals(const ConformalFactorField& f, double tol,
                                      bool need_lap) {
    if (f.is_grid()) return torus_integrals_at(f, f.nx(), f.ny(), need_lap);
    int n = 16;
    TorusIntegrals prev = torus_integrals_at(f, n, n, need_lap);
    while (n <= 512) {
        n *= 2;
        TorusIntegrals next = torus_integrals_at(f, n, n, need_lap);
        const double d = integrals_distance(prev, next, need_lap);
        if (d <= tol) {
            next.error = d;
            return next;
        }
        prev = next;
    }
    throw QuadratureError("torus quadrature did not stabilize", 0.0, 1.0, 0.0);
}

}  // namespace detail

/// lambda_1^2(g0) = 4 pi^2 min{|v*|^2 : 0 != v* in dual lattice}.
inline double flat_torus_lambda1_sq(const Lattice2& lat) {
    const double pi = std::numbers::pi;
    return 4.0 * pi * pi * shortest_vector_norm_sq(dual_lattice(lat));
}

/// Theorem 3 (trivial spin structure): bound for the first positive
/// eigenvalue on (T^2, h^4 g0).
inline BoundValue torus_trivial_bound(const ConformalFactorField& h, double tol = 1e-10) {
    const double lam0 = flat_torus_lambda1_sq(h.lattice());
    const auto I = detail::torus_integrals(h, tol, false);
    const double num = lam0 * I.int_h6_inv + 4.0 * I.grad2_h8;
    return {BoundKind::upper_t3, num / I.int_h2_inv,
            detail::ratio_error(num, I.error * std::abs(num), I.int_h2_inv,
                                I.error * I.int_h2_inv),
            false};
}

/// Inner-product convention for Theorem 4's flat normalization constant.
/// `as_printed` uses sqrt(|v1*|^2 |v2*|^2 - <v1*,v2*>); `squared_inner` uses
/// <v1*,v2*>^2, the form that equals 1/vol(T^2,g0) on every lattice.
enum class T4Convention { as_printed, squared_inner };

/// lambda_1^2(g0) vol(T^2,g0) = pi^2 |e1 v1* + e2 v2*|^2 / sqrt(...).
inline double theorem4_flat_constant(const Lattice2& lat, SpinStructure s,
                                     T4Convention conv = T4Convention::squared_inner) {
    if (s.is_trivial())
        throw std::invalid_argument("theorem4_flat_constant: spin structure must be nontrivial");
    const Lattice2 dual = dual_lattice(lat);
    const Vec2 ev = static_cast<double>(s.eps1) * dual.v1 +
                    static_cast<double>(s.eps2) * dual.v2;
    const double ip = dot(dual.v1, dual.v2);
    const double radicand = norm_sq(dual.v1) * norm_sq(dual.v2) -
                            (conv == T4Convention::squared_inner ? ip * ip : ip);
    if (!(radicand > 0))
        throw std::domain_error("theorem4_flat_constant: nonpositive radicand");
    const double pi = std::numbers::pi;
    return pi * pi * norm_sq(ev) / std::sqrt(radicand);
}

/// Absolute difference between the two Theorem-4 constant conventions.
inline double theorem4_constant_discrepancy(const Lattice2& lat, SpinStructure s) {
    return std::abs(theorem4_flat_constant(lat, s, T4Convention::as_printed) -
                    theorem4_flat_constant(lat, s, T4Convention::squared_inner));
}

/// Theorem 4, ratio form: pi^2 |e1 v1* + e2 v2*|^2 int h^-2 / int h^2.
inline BoundValue torus_spin_bound_ratio(const ConformalFactorField& h, SpinStructure s,
                                         double tol = 1e-10) {
    if (s.is_trivial())
        throw std::invalid_argument("torus_spin_bound_ratio: spin structure must be nontrivial");
    const Lattice2 dual = dual_lattice(h.lattice());
    const Vec2 ev = static_cast<double>(s.eps1) * dual.v1 +
                    static_cast<double>(s.eps2) * dual.v2;
    const auto I = detail::torus_integrals(h, tol, false);
    const double pi = std::numbers::pi;
    const double value = pi * pi * norm_sq(ev) * I.int_h2_inv / I.int_h2;
    return {BoundKind::upper_t4_star, value, 2.0 * I.error * std::abs(value), false};
}

/// Theorem 4, gradient form (volume-normalized):
/// lambda_1^2 vol <= lambda_1^2(g0) vol(T^2,g0) + int |grad h|^2 / h^2.
inline BoundValue torus_spin_bound_gradient(const ConformalFactorField& h, SpinStructure s,
                                            double tol = 1e-10,
                                            T4Convention conv = T4Convention::squared_inner) {
    const double c = theorem4_flat_constant(h.lattice(), s, conv);
    const auto I = detail::torus_integrals(h, tol, false);
    return {BoundKind::upper_t4_dstar, c + I.grad2_h2, I.error * (1.0 + I.grad2_h2), true};
}

/// Gaussian-curvature reformulation of the gradient form (volume-normalized):
/// the gradient integral is recovered from the flat Laplacian of log h via
/// h^4 G = -2 lap(log h) and int G log h dM^2 = -2 int lap(log h) log h dT^2
/// = +2 int |grad h|^2/h^2 dT^2.
inline BoundValue torus_curvature_bound(const ConformalFactorField& h, SpinStructure s,
                                        double tol = 1e-10,
                                        T4Convention conv = T4Convention::squared_inner) {
    const double c = theorem4_flat_constant(h.lattice(), s, conv);
    const auto I = detail::torus_integrals(h, tol, true);
    const double curvature_log_integral = -2.0 * I.lap_log_log;  // int G log h dM^2
    const double value = c + 0.5 * curvature_log_integral;
    return {BoundKind::upper_t4_curv, value, I.error * (1.0 + std::abs(value)), true};
}

// ---------------------------------------------------------------------------
// Tube specializations
// ---------------------------------------------------------------------------

/// int h^-2 / int h^2 for the tube: (1 - r^2 k^2)^{-3/2}.
inline double tube_conformal_ratio(const TubeParam& t) {
    const double b = t.r * t.kappa;
    return std::pow(1.0 - b * b, -1.5);
}

/// Display (*): closed-form Theorem-4 ratio bound for the tube.  Normalized
/// gives lambda_1^2 vol; otherwise lambda_1^2 itself.
inline BoundValue tube_bound_star(const TubeParam& t, SpinStructure s, bool normalized = true) {
    if (s.is_trivial())
        throw std::invalid_argument("tube_bound_star: spin structure must be nontrivial");
    const double b = t.r * t.kappa;
    const double ratio = tube_conformal_ratio(t);
    const double pi = std::numbers::pi;
    if (normalized) {
        const double value =
            pi * pi * (b * s.eps1 + (1.0 - b * b) / b * s.eps2) * ratio;
        return {BoundKind::tube_star, value, 0.0, true};
    }
    const double value = 0.25 *
                         (t.kappa * t.kappa * s.eps1 +
                          (1.0 - b * b) / (t.r * t.r) * s.eps2) *
                         ratio;
    return {BoundKind::tube_star, value, 0.0, false};
}

/// Display (**): gradient-form bound for the tube (volume-normalized).
inline BoundValue tube_bound_dstar(const TubeParam& t, SpinStructure s) {
    if (s.is_trivial())
        throw std::invalid_argument("tube_bound_dstar: spin structure must be nontrivial");
    const double b = t.r * t.kappa;
    const double root = std::sqrt(1.0 - b * b);
    const double pi = std::numbers::pi;
    const double value = pi * pi * (b * s.eps1 + (1.0 - b * b) / b * s.eps2) / root +
                         pi * pi / b * (1.0 - root);
    return {BoundKind::tube_dstar, value, 0.0, true};
}

/// int |grad h|^2 / h^2 dT^2 for the tube: (pi^2/rk)(1 - sqrt(1-r^2k^2)).
inline double tube_gradient_integral(const TubeParam& t) {
    const double b = t.r * t.kappa;
    const double pi = std::numbers::pi;
    return pi * pi / b * (1.0 - std::sqrt(1.0 - b * b));
}

/// Case 4 (trivial structure): min{2k^2, 1/r^2} times the printed quadrature
/// ratio.  `use_flat_min` swaps the printed factor for 4 pi^2 min |v*|^2 of
/// the tube lattice (exposed for comparison; the printed factor is default).
inline BoundValue tube_trivial_bound(const TubeParam& t, double tol = 1e-10,
                                     bool use_flat_min = false) {
    const double b = t.r * t.kappa;
    const double factor = use_flat_min
                              ? flat_torus_lambda1_sq(tube_lattice(t))
                              : std::min(2.0 * t.kappa * t.kappa, 1.0 / (t.r * t.r));
    const auto num = integrate_periodic_auto(
        [b](double phi) { return std::pow(1.0 - b * std::cos(phi), -4.0); },
        2.0 * std::numbers::pi, tol);
    const auto den = integrate_periodic_auto(
        [b](double phi) { return std::pow(1.0 - b * std::cos(phi), -2.0); },
        2.0 * std::numbers::pi, tol);
    const double value = factor * num.value / den.value;
    return {BoundKind::tube_trivial, value,
            factor * detail::ratio_error(num.value, num.error_estimate, den.value,
                                         den.error_estimate),
            false};
}

}  // namespace diracb
