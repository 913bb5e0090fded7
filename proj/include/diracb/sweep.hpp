#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "diracb/bounds.hpp"
#include "diracb/geometry.hpp"
#include "diracb/optimize.hpp"
#include "diracb/uniformization.hpp"

namespace diracb {

enum class SurfaceFamily { ellipsoid, tube, torus };

/// One requested curve; beta only matters for upper_t1.
struct SeriesRequest {
    BoundKind kind;
    double beta = 1.0;
};

struct SweepSpec {
    SurfaceFamily family = SurfaceFamily::ellipsoid;
    std::vector<double> grid;
    std::vector<SeriesRequest> kinds;
    SpinStructure spin{0, 0};
    double tol = 1e-10;
    double kappa = 1.0;  // tube sweeps fix kappa and read the grid as r*kappa
    bool normalized = false;
    std::optional<ConformalFactorField> torus_field;
};

struct BoundSeries {
    std::string label;
    BoundKind kind;
    std::vector<double> values;
    std::vector<double> errors;
};

struct PointFailure {
    std::size_t point_index;
    std::string series;
    std::string message;
};

struct BoundCurve {
    std::vector<double> params;
    std::vector<BoundSeries> series;
    std::vector<PointFailure> failures;
};

namespace detail {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string series_label(const SeriesRequest& req) {
    if (req.kind == BoundKind::upper_t1) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "upper_t1_beta_%g", req.beta);
        return buf;
    }
    return to_string(req.kind);
}

inline BoundValue evaluate_ellipsoid_point(const SeriesRequest& req, double a, double tol) {
    switch (req.kind) {
        case BoundKind::lower_lb:
            return lower_bound_genus0(ellipsoid_volume(a, tol));
        case BoundKind::upper_h2:
            return classical_H2_bound(EllipsoidParam(a), tol);
        case BoundKind::upper_t1:
            if (req.beta > 0.5) return ellipsoid_beta_bound(a, req.beta, tol);
            else {
                // beta <= 1/2 is outside the specialized family's domain but
                // fine for Theorem 1 itself at fixed a.
                const double beta = req.beta;
                TestFunctionPair tf;
                tf.f = [a, beta](double w) { return std::pow(delta_a(a, w), beta); };
                tf.df = [a, beta](double w) {
                    return beta * std::pow(delta_a(a, w), beta - 1.0) * 2.0 * (1.0 - a * a) * w;
                };
                return extrinsic_bound_T1(EllipsoidParam(a), tf, tol);
            }
        case BoundKind::upper_t1_beta1_closed:
            return ellipsoid_beta1_closed_form(a);
        case BoundKind::upper_t2: {
            const ProfileSolution sol(a);
            return intrinsic_sphere_bound(ellipsoid_volume(a, tol), I1(sol, tol));
        }
        default:
            throw std::invalid_argument("ellipsoid sweep: unsupported bound kind");
    }
}

inline BoundValue evaluate_tube_point(const SeriesRequest& req, const SweepSpec& spec,
                                      double rkappa) {
    const TubeParam t(spec.kappa, rkappa / spec.kappa);
    switch (req.kind) {
        case BoundKind::tube_star:
            return tube_bound_star(t, spec.spin, /*normalized=*/true);
        case BoundKind::tube_dstar:
            return tube_bound_dstar(t, spec.spin);
        case BoundKind::tube_h2: {
            BoundValue b = classical_H2_bound(t, spec.tol);
            b.value *= tube_volume(t);
            b.error_estimate *= tube_volume(t);
            b.normalized = true;
            return b;
        }
        case BoundKind::tube_trivial: {
            BoundValue b = tube_trivial_bound(t, spec.tol);
            b.value *= tube_volume(t);
            b.error_estimate *= tube_volume(t);
            b.normalized = true;
            return b;
        }
        default:
            throw std::invalid_argument("tube sweep: unsupported bound kind");
    }
}

inline BoundValue evaluate_torus_point(const SeriesRequest& req, const SweepSpec& spec) {
    if (!spec.torus_field)
        throw std::invalid_argument("torus sweep: missing conformal factor field");
    const ConformalFactorField& h = *spec.torus_field;
    switch (req.kind) {
        case BoundKind::upper_t3:
            return torus_trivial_bound(h, spec.tol);
        case BoundKind::upper_t4_star:
            return torus_spin_bound_ratio(h, spec.spin, spec.tol);
        case BoundKind::upper_t4_dstar:
            return torus_spin_bound_gradient(h, spec.spin, spec.tol);
        case BoundKind::upper_t4_curv:
            return torus_curvature_bound(h, spec.spin, spec.tol);
        default:
            throw std::invalid_argument("torus sweep: unsupported bound kind");
    }
}

}  // namespace detail

/// Parameter grids: either an explicit comma list or "lo:hi:n" (n >= 1,
/// linear, endpoints included).
inline std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0;
        long n = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 ||
            !(is >> std::ws).eof())
            throw std::invalid_argument("grid: expected lo:hi:n");
        if (n == 1) {
            if (lo != hi) throw std::invalid_argument("grid: single point needs lo == hi");
            out.push_back(lo);
            return out;
        }
        for (long i = 0; i < n; ++i)
            out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
        return out;
    }
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("grid: empty");
    return out;
}

/// Evaluates every requested bound at every grid point.  Per-point failures
/// are recorded in the curve (value slot left NaN-free by omission in CSV),
/// not fatal.
inline BoundCurve run_sweep(const SweepSpec& spec) {
    if (spec.grid.empty()) throw std::invalid_argument("run_sweep: empty grid");
    if (spec.kinds.empty()) throw std::invalid_argument("run_sweep: no bound kinds requested");
    if (spec.family == SurfaceFamily::tube)
        for (double x : spec.grid)
            if (!(x > 0.0 && x < 1.0))
                throw std::invalid_argument("run_sweep: tube grid must satisfy 0 < r*kappa < 1");
    if (spec.family == SurfaceFamily::ellipsoid)
        for (double x : spec.grid)
            if (!(x > 0.0)) throw std::invalid_argument("run_sweep: ellipsoid grid must be positive");

    BoundCurve curve;
    curve.params = spec.grid;
    for (const auto& req : spec.kinds)
        curve.series.push_back({detail::series_label(req), req.kind, {}, {}});

    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        for (std::size_t s = 0; s < spec.kinds.size(); ++s) {
            BoundSeries& series = curve.series[s];
            try {
                BoundValue b;
                switch (spec.family) {
                    case SurfaceFamily::ellipsoid:
                        b = detail::evaluate_ellipsoid_point(spec.kinds[s], spec.grid[i], spec.tol);
                        if (spec.normalized && !b.normalized) {
                            const double vol = ellipsoid_volume(spec.grid[i], spec.tol);
                            b.value *= vol;
                            b.error_estimate *= vol;
                            b.normalized = true;
                        }
                        break;
                    case SurfaceFamily::tube:
                        b = detail::evaluate_tube_point(spec.kinds[s], spec, spec.grid[i]);
                        if (!spec.normalized && b.normalized) {
                            const TubeParam t(spec.kappa, spec.grid[i] / spec.kappa);
                            b.value /= tube_volume(t);
                            b.error_estimate /= tube_volume(t);
                            b.normalized = false;
                        }
                        break;
                    case SurfaceFamily::torus:
                        b = detail::evaluate_torus_point(spec.kinds[s], spec);
                        break;
                }
                series.values.push_back(b.value);
                series.errors.push_back(b.error_estimate);
            } catch (const std::exception& e) {
                series.values.push_back(std::numeric_limits<double>::quiet_NaN());
                series.errors.push_back(std::numeric_limits<double>::quiet_NaN());
                curve.failures.push_back({i, series.label, e.what()});
            }
        }
    }
    return curve;
}

/// CSV: header "param,<kind>,<kind>_err,...", 17 significant digits, LF line
/// endings; failed points leave their cells empty.
inline void emit_csv(const BoundCurve& curve, std::ostream& os) {
    os << "param";
    for (const auto& s : curve.series) os << ',' << s.label << ',' << s.label << "_err";
    os << '\n';
    for (std::size_t i = 0; i < curve.params.size(); ++i) {
        os << detail::format_g17(curve.params[i]);
        for (const auto& s : curve.series) {
            if (i < s.values.size() && std::isfinite(s.values[i]))
                os << ',' << detail::format_g17(s.values[i]) << ','
                   << detail::format_g17(s.errors[i]);
            else
                os << ",,";
        }
        os << '\n';
    }
}

inline void emit_csv(const BoundCurve& curve, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit_csv: cannot open " + path);
    emit_csv(curve, os);
    if (!os.good()) throw std::runtime_error("emit_csv: write failed for " + path);
}

struct SvgOptions {
    std::string title;
    std::string x_label = "param";
    std::string y_label = "bound";
    double y_scale = 1.0;  // plotted y = value / y_scale (pi^2 for tube figures)
};

/// Minimal standalone SVG: one polyline per series, annotated axes.
inline void emit_svg(const BoundCurve& curve, std::ostream& os, const SvgOptions& opt = {}) {
    static const char* palette[] = {"#1f6fb2", "#c23b22", "#2e8b57", "#8b5cf6",
                                    "#b8860b", "#444444"};
    const int width = 960, height = 600, margin = 70;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (double p : curve.params) {
        if (!any) xmin = xmax = p;
        xmin = std::min(xmin, p);
        xmax = std::max(xmax, p);
        any = true;
    }
    bool any_y = false;
    for (const auto& s : curve.series)
        for (double v : s.values) {
            if (!std::isfinite(v)) continue;
            const double y = v / opt.y_scale;
            if (!any_y) ymin = ymax = y;
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
            any_y = true;
        }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    auto X = [&](double x) {
        return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
    };
    auto Y = [&](double y) {
        return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
    };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    if (!opt.title.empty())
        os << "  <text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
           << "font-size=\"16\">" << opt.title << "</text>\n";
    os << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
       << "\" height=\"" << height - 2 * margin << "\" fill=\"none\" stroke=\"#999\"/>\n";
    // axis labels and min/max ticks
    os << "  <text x=\"" << width / 2 << "\" y=\"" << height - 18
       << "\" text-anchor=\"middle\" font-size=\"13\">" << opt.x_label << "</text>\n";
    os << "  <text x=\"20\" y=\"" << height / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
       << height / 2 << ")\">" << opt.y_label << "</text>\n";
    os << "  <text x=\"" << margin << "\" y=\"" << height - margin + 22
       << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::format_g17(xmin).substr(0, 8)
       << "</text>\n";
    os << "  <text x=\"" << width - margin << "\" y=\"" << height - margin + 22
       << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::format_g17(xmax).substr(0, 8)
       << "</text>\n";
    os << "  <text x=\"" << margin - 8 << "\" y=\"" << height - margin + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << detail::format_g17(ymin).substr(0, 8)
       << "</text>\n";
    os << "  <text x=\"" << margin - 8 << "\" y=\"" << margin + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << detail::format_g17(ymax).substr(0, 8)
       << "</text>\n";

    for (std::size_t s = 0; s < curve.series.size(); ++s) {
        const auto& series = curve.series[s];
        const char* color = palette[s % 6];
        os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < curve.params.size(); ++i) {
            if (i >= series.values.size() || !std::isfinite(series.values[i])) continue;
            os << X(curve.params[i]) << ',' << Y(series.values[i] / opt.y_scale) << ' ';
        }
        os << "\"/>\n";
        os << "  <text x=\"" << width - margin - 6 << "\" y=\"" << margin + 18 + 16 * s
           << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << series.label
           << "</text>\n";
    }
    os << "</svg>\n";
}

inline void emit_svg(const BoundCurve& curve, const std::string& path,
                     const SvgOptions& opt = {}) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit_svg: cannot open " + path);
    emit_svg(curve, os, opt);
    if (!os.good()) throw std::runtime_error("emit_svg: write failed for " + path);
}

/// Torus conformal-factor grid file: first line "nx ny", then nx*ny strictly
/// positive decimals, row-major, periodic (no duplicated boundary samples).
inline ConformalFactorField read_grid_file(const std::string& path, const Lattice2& lat) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("grid file: cannot open " + path);
    int nx = 0, ny = 0;
    if (!(is >> nx >> ny) || nx < 4 || ny < 4)
        throw std::invalid_argument("grid file: bad header (want nx ny, both >= 4)");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(nx) * ny);
    double v = 0;
    while (is >> v) values.push_back(v);
    if (static_cast<int>(values.size()) != nx * ny)
        throw std::invalid_argument("grid file: expected " + std::to_string(nx * ny) +
                                    " values, got " + std::to_string(values.size()));
    return ConformalFactorField::from_grid(lat, nx, ny, std::move(values));
}

}  // namespace diracb
