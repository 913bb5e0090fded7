#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "diracb/geometry.hpp"
#include "diracb/quadrature.hpp"

using namespace diracb;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("delta_a basics") {
    CHECK(delta_a(1.0, 0.37) == 1.0);
    CHECK(delta_a(2.0, 1.0) == 1.0);
    CHECK(delta_a(0.3, -1.0) == Approx(1.0).epsilon(1e-15));
    // coefficient collapse as a -> 0
    CHECK(delta_a(1e-9, 0.4) == Approx(0.16).epsilon(1e-12));
}

TEST_CASE("delta_a symmetry and range") {
    for (double a : {0.2, 0.7, 1.0, 3.0}) {
        const double lo = std::min(1.0, a * a), hi = std::max(1.0, a * a);
        for (int i = 0; i <= 20; ++i) {
            const double w = -1.0 + 0.1 * i;
            CHECK(delta_a(a, w) == Approx(delta_a(a, -w)).epsilon(1e-15));
            CHECK(delta_a(a, w) >= lo - 1e-15);
            CHECK(delta_a(a, w) <= hi + 1e-15);
        }
    }
}

TEST_CASE("ellipsoid quantities on the round sphere") {
    for (double w : {-0.9, 0.0, 0.5}) {
        const auto q = ellipsoid_quantities(1.0, w);
        CHECK(q.H2 == Approx(1.0).epsilon(1e-15));
        CHECK(q.K_gauss == Approx(1.0).epsilon(1e-15));
        CHECK(q.area_density == Approx(1.0).epsilon(1e-15));
    }
    // int H^2 dE over the round sphere is the full area 4 pi
    const auto q = integrate_adaptive(
        [](double w) {
            const auto e = ellipsoid_quantities(1.0, w);
            return e.H2 * e.area_density;
        },
        -1.0, 1.0);
    CHECK(2 * kPi * q.value == Approx(4 * kPi).epsilon(1e-12));
}

TEST_CASE("ellipsoid quantities at a=2, w=0") {
    const auto q = ellipsoid_quantities(2.0, 0.0);
    CHECK(q.H2 == Approx(25.0 / 64.0).epsilon(1e-15));
    CHECK(q.K_gauss == Approx(0.25).epsilon(1e-15));
    CHECK(q.area_density == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("ellipsoid volume limits") {
    CHECK(ellipsoid_volume(1.0) == Approx(4 * kPi).epsilon(1e-12));
    // a -> 0 limit is 2 pi (two flat disks)
    CHECK(ellipsoid_volume(1e-4) == Approx(2 * kPi).epsilon(1e-5));
    // large-a growth ~ pi^2 a
    CHECK(ellipsoid_volume(100.0) / 100.0 == Approx(kPi * kPi).epsilon(0.01));
}

TEST_CASE("ellipsoid volume is strictly increasing in a") {
    double prev = 0.0;
    for (double a : {0.1, 0.4, 0.8, 1.0, 1.5, 3.0, 8.0}) {
        const double v = ellipsoid_volume(a);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("dual lattice basics") {
    const Lattice2 square{{2 * kPi, 0}, {0, 2 * kPi}};
    const Lattice2 dual = dual_lattice(square);
    CHECK(dual.v1.x == Approx(1.0 / (2 * kPi)).epsilon(1e-15));
    CHECK(dual.v1.y == 0.0);
    CHECK(dual.v2.y == Approx(1.0 / (2 * kPi)).epsilon(1e-15));

    CHECK_THROWS_AS((Lattice2{{1, 1}, {2, 2}}), std::invalid_argument);
}

TEST_CASE("dual lattice satisfies the pairing and the involution") {
    const Lattice2 skew{{1.7, 0.3}, {-0.4, 2.2}};
    const Lattice2 dual = dual_lattice(skew);
    CHECK(dot(skew.v1, dual.v1) == Approx(1.0).epsilon(1e-14));
    CHECK(dot(skew.v2, dual.v2) == Approx(1.0).epsilon(1e-14));
    CHECK(dot(skew.v1, dual.v2) == Approx(0.0).margin(1e-14));
    CHECK(dot(skew.v2, dual.v1) == Approx(0.0).margin(1e-14));

    const Lattice2 back = dual_lattice(dual);
    CHECK(back.v1.x == Approx(skew.v1.x).epsilon(1e-12));
    CHECK(back.v1.y == Approx(skew.v1.y).epsilon(1e-12));
    CHECK(back.v2.x == Approx(skew.v2.x).epsilon(1e-12));
    CHECK(back.v2.y == Approx(skew.v2.y).epsilon(1e-12));
}

TEST_CASE("tube lattice") {
    const TubeParam t(1.0, 0.5);
    const Lattice2 lat = tube_lattice(t);
    CHECK(lat.v1.x == Approx(2 * kPi).epsilon(1e-15));
    CHECK(lat.v2.y == Approx(2 * kPi / std::sqrt(3.0)).epsilon(1e-14));

    // dual of the printed basis
    const Lattice2 dual = dual_lattice(lat);
    CHECK(dual.v1.x == Approx(1.0 / (2 * kPi)).epsilon(1e-14));
    CHECK(dual.v2.y == Approx(std::sqrt(0.75) / (2 * kPi * 0.5)).epsilon(1e-14));

    // kappa -> 0 blows up |v1|
    CHECK(tube_lattice(TubeParam(1e-9, 0.5)).v1.x > 1e9);

    CHECK_THROWS_AS(TubeParam(2.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(TubeParam(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("tube volume closed form matches area-element quadrature") {
    for (auto [kappa, r, expect] : {std::tuple{1.0, 0.5, 2 * kPi * kPi},
                                    std::tuple{2.0, 0.25, kPi * kPi / 2}}) {
        const TubeParam t(kappa, r);
        CHECK(tube_volume(t) == Approx(expect).epsilon(1e-14));
        // oracle: quadrature of the area element (1 - r k cos phi) r over the chart
        const double quad = t.circle_length() * r *
                            integrate_periodic(
                                [&](double phi) { return 1.0 - r * kappa * std::cos(phi); },
                                2 * kPi, 256);
        CHECK(quad == Approx(tube_volume(t)).epsilon(1e-10));
    }
}

TEST_CASE("shortest lattice vector enumeration") {
    CHECK(shortest_vector_norm_sq(Lattice2{{2 * kPi, 0}, {0, 2 * kPi}}) ==
          Approx(4 * kPi * kPi).epsilon(1e-14));
    // skewed basis of the square lattice: same shortest vector
    CHECK(shortest_vector_norm_sq(Lattice2{{1, 0}, {3, 1}}) == Approx(1.0).epsilon(1e-14));
    // hexagonal-ish
    CHECK(shortest_vector_norm_sq(Lattice2{{1, 0}, {0.5, std::sqrt(3.0) / 2}}) ==
          Approx(1.0).epsilon(1e-14));
}

TEST_CASE("conformal factor field validation") {
    const Lattice2 lat{{1, 0}, {0, 1}};
    CHECK_THROWS_AS(ConformalFactorField::from_grid(lat, 4, 4, std::vector<double>(15, 1.0)),
                    std::invalid_argument);
    std::vector<double> bad(16, 1.0);
    bad[3] = -2.0;
    CHECK_THROWS_AS(ConformalFactorField::from_grid(lat, 4, 4, bad), std::invalid_argument);

    auto f = ConformalFactorField::closed_form(
        lat, [](double s, double t) { return 1.0 + 0.5 * std::sin(2 * kPi * s) * std::cos(2 * kPi * t); });
    const auto samples = f.sample(8, 8);
    CHECK(samples.size() == 64);
    CHECK(samples[0] == Approx(1.0).epsilon(1e-15));
}
