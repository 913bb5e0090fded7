#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diracb/quadrature.hpp"

namespace diracb {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::sqrt(norm_sq(v)); }

/// Ellipsoid of revolution x^2 + y^2 + z^2/a^2 = 1.
struct EllipsoidParam {
    double a = 1.0;

    explicit EllipsoidParam(double half_axis) : a(half_axis) {
        if (!(a > 0)) throw std::invalid_argument("EllipsoidParam: requires a > 0");
    }
};

/// Tube of radius r around a planar circle of curvature kappa (length 2*pi/kappa).
struct TubeParam {
    double kappa = 1.0;
    double r = 0.5;

    TubeParam(double curvature, double radius) : kappa(curvature), r(radius) {
        if (!(kappa > 0) || !(r > 0))
            throw std::invalid_argument("TubeParam: requires kappa > 0 and r > 0");
        if (!(r * kappa < 1))
            throw std::invalid_argument("TubeParam: embedding requires r*kappa < 1");
    }

    double circle_length() const { return 2.0 * std::numbers::pi / kappa; }
};

/// Planar lattice spanned by two independent basis vectors.
struct Lattice2 {
    Vec2 v1;
    Vec2 v2;

    Lattice2(Vec2 b1, Vec2 b2) : v1(b1), v2(b2) {
        if (std::abs(det()) <= 1e-14 * std::max(1.0, norm(v1) * norm(v2)))
            throw std::invalid_argument("Lattice2: basis vectors are (nearly) dependent");
    }

    double det() const { return v1.x * v2.y - v1.y * v2.x; }
    double cell_area() const { return std::abs(det()); }
};

/// Dual basis with <v_i, v_j*> = delta_ij.
inline Lattice2 dual_lattice(const Lattice2& lat) {
    const double d = lat.det();
    return Lattice2{{lat.v2.y / d, -lat.v2.x / d}, {-lat.v1.y / d, lat.v1.x / d}};
}

/// Squared norm of the shortest nonzero lattice vector.
inline double shortest_vector_norm_sq(const Lattice2& lat) {
    // Any m*v1 + n*v2 has norm >= sigma_min * sqrt(m^2 + n^2), so the search
    // box is finite once a candidate is known.
    const double g11 = norm_sq(lat.v1), g22 = norm_sq(lat.v2), g12 = dot(lat.v1, lat.v2);
    const double tr = g11 + g22;
    const double dt = g11 * g22 - g12 * g12;
    const double sigma_min_sq = 0.5 * (tr - std::sqrt(tr * tr - 4.0 * dt));
    double best = std::min(g11, g22);
    const int reach = static_cast<int>(std::ceil(std::sqrt(best / sigma_min_sq))) + 1;
    for (int m = -reach; m <= reach; ++m)
        for (int n = -reach; n <= reach; ++n) {
            if (m == 0 && n == 0) continue;
            best = std::min(best, norm_sq(m * lat.v1 + n * lat.v2));
        }
    return best;
}

/// Spin structure on the torus; (0,0) is the trivial one.
struct SpinStructure {
    int eps1 = 0;
    int eps2 = 0;

    SpinStructure(int e1, int e2) : eps1(e1), eps2(e2) {
        if ((eps1 != 0 && eps1 != 1) || (eps2 != 0 && eps2 != 1))
            throw std::invalid_argument("SpinStructure: entries must be 0 or 1");
    }

    bool is_trivial() const { return eps1 == 0 && eps2 == 0; }
};

/// Delta_a(w) = (1 - a^2) w^2 + a^2.
inline double delta_a(double a, double w) {
    return (1.0 - a * a) * w * w + a * a;
}

struct EllipsoidQuantities {
    double H2;            // squared mean curvature
    double K_gauss;       // Gaussian curvature
    double area_density;  // dE(a) = area_density dw ^ dphi
};

/// Pointwise geometry of E(a) in the (w, phi) parametrization, |w| < 1.
inline EllipsoidQuantities ellipsoid_quantities(double a, double w) {
    const double d = delta_a(a, w);
    const double dp1 = d + 1.0;
    return {0.25 * a * a * dp1 * dp1 / (d * d * d), a * a / (d * d), std::sqrt(d)};
}

/// Surface area of E(a), by quadrature of the area element.
inline double ellipsoid_volume(double a, double tol = 1e-10) {
    if (!(a > 0)) throw std::invalid_argument("ellipsoid_volume: requires a > 0");
    QuadratureOptions opt;
    opt.tol = tol;
    const auto q = integrate_adaptive([a](double w) { return std::sqrt(delta_a(a, w)); },
                                      0.0, 1.0, opt);
    return 4.0 * std::numbers::pi * q.value;
}

/// Uniformizing lattice of the tube: v1 = (L, 0), v2 = (0, 2*pi*r/sqrt(1-r^2 k^2)).
inline Lattice2 tube_lattice(const TubeParam& t) {
    const double b = t.r * t.kappa;
    return Lattice2{{t.circle_length(), 0.0},
                    {0.0, 2.0 * std::numbers::pi * t.r / std::sqrt(1.0 - b * b)}};
}

/// vol(kappa, r) = 4 pi^2 r / kappa.
inline double tube_volume(const TubeParam& t) {
    return 4.0 * std::numbers::pi * std::numbers::pi * t.r / t.kappa;
}

/// Strictly positive conformal factor h on a torus fundamental domain,
/// either closed-form (with optional analytic derivatives) or as a periodic
/// grid of samples.  Coordinates (s,t) in [0,1)^2 refer to the lattice basis;
/// derivative callbacks are Cartesian.
class ConformalFactorField {
public:
    using Fn = std::function<double(double, double)>;

    static ConformalFactorField closed_form(Lattice2 lat, Fn h, Fn dh_dx = {},
                                            Fn dh_dy = {}, Fn laplacian_log_h = {}) {
        ConformalFactorField f(std::move(lat));
        f.h_ = std::move(h);
        f.dh_dx_ = std::move(dh_dx);
        f.dh_dy_ = std::move(dh_dy);
        f.lap_log_h_ = std::move(laplacian_log_h);
        return f;
    }

    static ConformalFactorField from_grid(Lattice2 lat, int nx, int ny,
                                          std::vector<double> values) {
        if (nx < 4 || ny < 4)
            throw std::invalid_argument("ConformalFactorField: grid must be at least 4x4");
        if (static_cast<int>(values.size()) != nx * ny)
            throw std::invalid_argument("ConformalFactorField: grid size mismatch");
        for (double v : values)
            if (!(v > 0) || !std::isfinite(v))
                throw std::invalid_argument("ConformalFactorField: values must be positive and finite");
        ConformalFactorField f(std::move(lat));
        f.nx_ = nx;
        f.ny_ = ny;
        f.grid_ = std::move(values);
        return f;
    }

    const Lattice2& lattice() const { return lat_; }
    bool is_grid() const { return !grid_.empty(); }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    const std::vector<double>& grid() const { return grid_; }

    bool has_closed_form() const { return static_cast<bool>(h_); }
    bool has_analytic_gradient() const { return dh_dx_ && dh_dy_; }
    bool has_analytic_laplacian_log() const { return static_cast<bool>(lap_log_h_); }

    double value(double s, double t) const {
        const double v = h_(s, t);
        if (!(v > 0) || !std::isfinite(v))
            throw std::invalid_argument("ConformalFactorField: factor must stay positive");
        return v;
    }
    double dx(double s, double t) const { return dh_dx_(s, t); }
    double dy(double s, double t) const { return dh_dy_(s, t); }
    double laplacian_log(double s, double t) const { return lap_log_h_(s, t); }

    /// Samples the closed form onto an nx x ny periodic grid.
    std::vector<double> sample(int nx, int ny) const {
        std::vector<double> out(static_cast<std::size_t>(nx) * ny);
        for (int j = 0; j < nx; ++j)
            for (int k = 0; k < ny; ++k)
                out[static_cast<std::size_t>(j) * ny + k] =
                    value(static_cast<double>(j) / nx, static_cast<double>(k) / ny);
        return out;
    }

private:
    explicit ConformalFactorField(Lattice2 lat) : lat_(lat) {}

    Lattice2 lat_;
    Fn h_;
    Fn dh_dx_;
    Fn dh_dy_;
    Fn lap_log_h_;
    int nx_ = 0;
    int ny_ = 0;
    std::vector<double> grid_;
};

/// Rotationally symmetric conformal factor on S^2 in the (x, phi) chart of
/// the round metric g0 = 4 (dx^2 + x^2 dphi^2)/(1+x^2)^2, x in (0, inf).
struct SphereConformalFactor {
    std::function<double(double)> h;
    std::function<double(double)> dh_dx;  // may be empty; centered differences then
};

}  // namespace diracb
