// Command-line front end: bound sweeps over the ellipsoid and tube families,
// torus bounds from conformal-factor grids, the beta optimizer, the flat-torus
// spectrum oracle, and regeneration of the five comparison-figure datasets.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diracb/diracb.hpp"

namespace {

using namespace diracb;

SpinStructure parse_spin(const std::string& text) {
    int e1 = 0, e2 = 0;
    char c = 0;
    std::istringstream is(text);
    if (!(is >> e1 >> c >> e2) || c != ',' || !(is >> std::ws).eof())
        throw std::invalid_argument("spin: expected e1,e2 with entries 0 or 1");
    return SpinStructure(e1, e2);
}

Lattice2 parse_lattice(const std::string& text) {
    std::vector<double> v;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) v.push_back(std::stod(item));
    if (v.size() != 4)
        throw std::invalid_argument("lattice: expected v1x,v1y,v2x,v2y");
    return Lattice2{{v[0], v[1]}, {v[2], v[3]}};
}

void print_curve(const BoundCurve& curve, std::ostream& os) {
    os << "param";
    for (const auto& s : curve.series) os << '\t' << s.label;
    os << '\n';
    for (std::size_t i = 0; i < curve.params.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", curve.params[i]);
        os << buf;
        for (const auto& s : curve.series) {
            std::snprintf(buf, sizeof(buf), "%.10g", s.values[i]);
            os << '\t' << buf;
        }
        os << '\n';
    }
    for (const auto& f : curve.failures)
        os << "# failed: point " << f.point_index << " series " << f.series << ": "
           << f.message << '\n';
}

void emit_outputs(const BoundCurve& curve, const std::string& csv, const std::string& svg,
                  const SvgOptions& opt) {
    if (!csv.empty()) emit_csv(curve, csv);
    if (!svg.empty()) emit_svg(curve, svg, opt);
    if (csv.empty() && svg.empty()) print_curve(curve, std::cout);
}

struct FigureJob {
    std::string name;
    SweepSpec spec;
    SvgOptions svg;
};

std::vector<FigureJob> figure_jobs(double tol) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    std::vector<FigureJob> jobs;

    SweepSpec fig1;
    fig1.family = SurfaceFamily::ellipsoid;
    fig1.grid = parse_grid("0.05:0.95:46");
    fig1.kinds = {{BoundKind::lower_lb}, {BoundKind::upper_h2},
                  {BoundKind::upper_t1, 0.5}, {BoundKind::upper_t1, 1.0}};
    fig1.tol = tol;
    jobs.push_back({"figure1", fig1, {"ellipsoid bounds, 0 < a < 1", "a", "lambda_1^2", 1.0}});

    SweepSpec fig2 = fig1;
    fig2.grid = parse_grid("1.05:9.85:45");
    jobs.push_back({"figure2", fig2, {"ellipsoid bounds, a > 1", "a", "lambda_1^2", 1.0}});

    SweepSpec fig3;
    fig3.family = SurfaceFamily::tube;
    fig3.grid = parse_grid("0.02:0.98:49");
    fig3.spin = SpinStructure(1, 0);
    fig3.kinds = {{BoundKind::tube_star}, {BoundKind::tube_dstar}};
    fig3.tol = tol;
    fig3.normalized = true;
    jobs.push_back({"figure3", fig3,
                    {"tube bounds, spin (1,0)", "r*kappa", "lambda_1^2 vol / pi^2", pi2}});

    SweepSpec fig4 = fig3;
    fig4.spin = SpinStructure(0, 1);
    jobs.push_back({"figure4", fig4,
                    {"tube bounds, spin (0,1)", "r*kappa", "lambda_1^2 vol / pi^2", pi2}});

    SweepSpec fig5 = fig3;
    fig5.spin = SpinStructure(1, 1);
    fig5.kinds = {{BoundKind::tube_star}, {BoundKind::tube_dstar}, {BoundKind::tube_h2}};
    jobs.push_back({"figure5", fig5,
                    {"tube bounds, spin (1,1)", "r*kappa", "lambda_1^2 vol / pi^2", pi2}});
    return jobs;
}

int run(int argc, char** argv) {
    CLI::App app{"Eigenvalue bounds for the Dirac operator on surfaces"};
    app.require_subcommand(1);

    double tol = 1e-10;
    std::string grid_text, csv_path, svg_path, spin_text = "1,1";
    std::string lattice_text = "1,0,0,1", hgrid_path, out_dir = "figures";
    std::string bracket_text = "0.55:20";
    double kappa = 1.0, a_value = 1.0;
    int count = 10;
    bool normalized = false;

    auto add_common = [&](CLI::App* sub, const char* default_grid) {
        grid_text = default_grid;
        sub->add_option("--tol", tol, "quadrature tolerance");
        sub->add_option("--grid", grid_text, "parameter grid: lo:hi:n or v1,v2,...");
        sub->add_option("--csv", csv_path, "write CSV to this path");
        sub->add_option("--svg", svg_path, "write SVG to this path");
    };

    auto* ell = app.add_subcommand("ellipsoid", "bounds for the ellipsoid family E(a)");
    std::vector<double> betas;
    add_common(ell, "0.05:0.95:46");
    ell->add_option("--beta", betas, "extra Theorem-1 exponents beta (repeatable)");
    ell->add_flag("--normalized", normalized, "report lambda_1^2 * vol");

    auto* tube = app.add_subcommand("tube", "bounds for tubes around circles, grid in r*kappa");
    add_common(tube, "0.02:0.98:49");
    tube->add_option("--spin", spin_text, "spin structure e1,e2");
    tube->add_option("--kappa", kappa, "circle curvature (r follows from the grid)");
    tube->add_flag("--normalized", normalized, "report lambda_1^2 * vol");

    auto* torus = app.add_subcommand("torus", "conformal torus bounds from a factor grid");
    torus->add_option("--tol", tol, "quadrature tolerance");
    torus->add_option("--lattice", lattice_text, "lattice basis v1x,v1y,v2x,v2y");
    torus->add_option("--h-grid", hgrid_path, "conformal factor grid file (nx ny then values)");
    torus->add_option("--spin", spin_text, "spin structure e1,e2");
    torus->add_option("--csv", csv_path, "write CSV to this path");

    auto* opt = app.add_subcommand("optimize-beta", "minimize the Theorem-1 bound over beta");
    opt->add_option("--a", a_value, "ellipsoid parameter");
    opt->add_option("--grid", grid_text, "sweep over a instead of a single value");
    opt->add_option("--bracket", bracket_text, "beta bracket lo:hi");
    opt->add_option("--tol", tol, "quadrature tolerance");
    opt->add_option("--csv", csv_path, "write CSV to this path");

    auto* spec = app.add_subcommand("spectrum", "flat-torus Dirac spectrum oracle");
    spec->add_option("--lattice", lattice_text, "lattice basis v1x,v1y,v2x,v2y");
    spec->add_option("--spin", spin_text, "spin structure e1,e2");
    spec->add_option("--count", count, "number of eigenvalues");
    spec->add_option("--csv", csv_path, "write CSV to this path");

    auto* figs = app.add_subcommand("figures", "regenerate the five comparison-figure datasets");
    figs->add_option("--out", out_dir, "output directory");
    figs->add_option("--tol", tol, "quadrature tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (ell->parsed()) {
        SweepSpec s;
        s.family = SurfaceFamily::ellipsoid;
        s.grid = parse_grid(grid_text);
        s.tol = tol;
        s.normalized = normalized;
        s.kinds = {{BoundKind::lower_lb}, {BoundKind::upper_h2}};
        for (double b : betas) s.kinds.push_back({BoundKind::upper_t1, b});
        s.kinds.push_back({BoundKind::upper_t1_beta1_closed});
        s.kinds.push_back({BoundKind::upper_t2});
        const BoundCurve curve = run_sweep(s);
        emit_outputs(curve, csv_path, svg_path,
                     {"ellipsoid bounds", "a",
                      normalized ? "lambda_1^2 vol" : "lambda_1^2", 1.0});
        return 0;
    }
    if (tube->parsed()) {
        SweepSpec s;
        s.family = SurfaceFamily::tube;
        s.grid = parse_grid(grid_text);
        s.spin = parse_spin(spin_text);
        s.tol = tol;
        s.kappa = kappa;
        s.normalized = normalized;
        if (s.spin.is_trivial())
            s.kinds = {{BoundKind::tube_trivial}};
        else if (s.spin.eps1 == 1 && s.spin.eps2 == 1)
            s.kinds = {{BoundKind::tube_star}, {BoundKind::tube_dstar}, {BoundKind::tube_h2}};
        else
            s.kinds = {{BoundKind::tube_star}, {BoundKind::tube_dstar}};
        const BoundCurve curve = run_sweep(s);
        const double pi2 = std::numbers::pi * std::numbers::pi;
        emit_outputs(curve, csv_path, svg_path,
                     {"tube bounds", "r*kappa",
                      normalized ? "lambda_1^2 vol / pi^2" : "lambda_1^2",
                      normalized ? pi2 : 1.0});
        return 0;
    }
    if (torus->parsed()) {
        const Lattice2 lat = parse_lattice(lattice_text);
        const SpinStructure spin = parse_spin(spin_text);
        ConformalFactorField field =
            hgrid_path.empty()
                ? ConformalFactorField::closed_form(
                      lat, [](double, double) { return 1.0; },
                      [](double, double) { return 0.0; }, [](double, double) { return 0.0; },
                      [](double, double) { return 0.0; })
                : read_grid_file(hgrid_path, lat);
        SweepSpec s;
        s.family = SurfaceFamily::torus;
        s.grid = {0.0};
        s.spin = spin;
        s.tol = tol;
        s.torus_field = field;
        if (spin.is_trivial())
            s.kinds = {{BoundKind::upper_t3}};
        else
            s.kinds = {{BoundKind::upper_t4_star}, {BoundKind::upper_t4_dstar},
                       {BoundKind::upper_t4_curv}};
        const BoundCurve curve = run_sweep(s);
        emit_outputs(curve, csv_path, "", {"torus bounds", "-", "bound", 1.0});
        if (!spin.is_trivial()) {
            const double printed =
                theorem4_flat_constant(lat, spin, T4Convention::as_printed);
            const double squared =
                theorem4_flat_constant(lat, spin, T4Convention::squared_inner);
            if (std::abs(printed - squared) > 1e-12 * std::max(1.0, std::abs(squared)))
                std::cout << "# note: Theorem-4 constant differs between conventions: "
                          << "as printed " << printed << ", squared inner product "
                          << squared << " (squared form used)\n";
        }
        return 0;
    }
    if (opt->parsed()) {
        const auto bracket = parse_grid(bracket_text + ":2");
        const double lo = bracket.front(), hi = bracket.back();
        if (opt->count("--grid") > 0) {
            const std::vector<double> grid = parse_grid(grid_text);
            BoundCurve curve;
            curve.params = grid;
            curve.series = {{"beta_star", BoundKind::upper_t1, {}, {}},
                            {"value", BoundKind::upper_t1, {}, {}}};
            for (double a : grid) {
                const OptimizationResult r = optimize_beta(a, lo, hi, 1e-8, tol);
                curve.series[0].values.push_back(r.beta_star);
                curve.series[0].errors.push_back(0.0);
                curve.series[1].values.push_back(r.value);
                curve.series[1].errors.push_back(0.0);
            }
            emit_outputs(curve, csv_path, "", {"optimal beta", "a", "beta/value", 1.0});
        } else {
            const OptimizationResult r = optimize_beta(a_value, lo, hi, 1e-8, tol);
            std::cout << "a = " << a_value << "\nbeta_star = " << r.beta_star
                      << "\nvalue = " << r.value << "\niterations = " << r.iterations
                      << "\nbracket = [" << r.bracket_lo << ", " << r.bracket_hi << "]\n";
            if (r.starts_disagree)
                std::cout << "# note: multi-start minimizers disagree; objective may be multimodal\n";
        }
        return 0;
    }
    if (spec->parsed()) {
        const SpectrumSlice slice =
            flat_spectrum(parse_lattice(lattice_text), parse_spin(spin_text), count);
        if (!csv_path.empty()) {
            std::ofstream os(csv_path, std::ios::binary);
            if (!os) throw std::runtime_error("cannot open " + csv_path);
            os << "index,lambda_sq\n";
            for (std::size_t i = 0; i < slice.eigenvalue_squares.size(); ++i)
                os << i << ',' << diracb::detail::format_g17(slice.eigenvalue_squares[i])
                   << '\n';
        } else {
            std::cout << "lambda^2 (spin " << slice.structure.eps1 << ','
                      << slice.structure.eps2 << "):\n";
            for (double v : slice.eigenvalue_squares) std::cout << "  " << v << '\n';
        }
        return 0;
    }
    if (figs->parsed()) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) throw std::runtime_error("cannot create " + out_dir + ": " + ec.message());
        for (const auto& job : figure_jobs(tol)) {
            const BoundCurve curve = run_sweep(job.spec);
            emit_csv(curve, out_dir + "/" + job.name + ".csv");
            emit_svg(curve, out_dir + "/" + job.name + ".svg", job.svg);
        }
        std::cout << "wrote 5 figure datasets to " << out_dir << "\n";
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const diracb::QuadratureError& e) {
        std::cerr << "numerical nonconvergence: " << e.what() << '\n';
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "invalid specification: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
