#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "diracb/geometry.hpp"

namespace diracb {

/// Leading part of the Dirac spectrum of a flat torus R^2/Gamma.
struct SpectrumSlice {
    std::vector<double> eigenvalue_squares;  // sorted, with multiplicities
    SpinStructure structure;
    Lattice2 lattice;

    /// Smallest strictly positive entry.
    double first_positive() const {
        for (double v : eigenvalue_squares)
            if (v > 1e-14) return v;
        throw std::runtime_error("SpectrumSlice: no positive eigenvalue in slice");
    }

    std::size_t kernel_multiplicity() const {
        std::size_t n = 0;
        for (double v : eigenvalue_squares)
            if (v <= 1e-14) ++n;
        return n;
    }
};

/// Brute-force flat-torus Dirac spectrum: every dual-lattice point gamma*
/// contributes lambda^2 = 4 pi^2 |gamma* + (e1 v1* + e2 v2*)/2|^2 with
/// multiplicity two.  The enumeration box is grown until the requested count
/// of smallest values is provably complete.
inline SpectrumSlice flat_spectrum(const Lattice2& lat, SpinStructure s, int count) {
    if (count < 1) throw std::invalid_argument("flat_spectrum: requires count >= 1");
    const Lattice2 dual = dual_lattice(lat);
    const Vec2 shift = 0.5 * (static_cast<double>(s.eps1) * dual.v1 +
                              static_cast<double>(s.eps2) * dual.v2);

    const double g11 = norm_sq(dual.v1), g22 = norm_sq(dual.v2), g12 = dot(dual.v1, dual.v2);
    const double tr = g11 + g22;
    const double dt = g11 * g22 - g12 * g12;
    const double sigma_min = std::sqrt(0.5 * (tr - std::sqrt(tr * tr - 4.0 * dt)));

    std::vector<double> norms;
    double radius = norm(shift) + std::sqrt(std::max(g11, g22));
    const int needed = (count + 1) / 2;
    for (;;) {
        norms.clear();
        // every |m v1* + n v2* + shift| <= radius satisfies
        // sigma_min sqrt(m^2+n^2) <= radius + |shift|
        const int reach =
            static_cast<int>(std::ceil((radius + norm(shift)) / sigma_min)) + 1;
        for (int m = -reach; m <= reach; ++m)
            for (int n = -reach; n <= reach; ++n) {
                const double d = norm(m * dual.v1 + n * dual.v2 + shift);
                if (d <= radius) norms.push_back(d);
            }
        if (static_cast<int>(norms.size()) >= needed) break;
        radius *= 2.0;
    }
    std::sort(norms.begin(), norms.end());
    norms.resize(needed);

    SpectrumSlice slice{{}, s, lat};
    slice.eigenvalue_squares.reserve(static_cast<std::size_t>(count));
    const double pi = std::numbers::pi;
    for (double d : norms) {
        const double lambda_sq = 4.0 * pi * pi * d * d;
        slice.eigenvalue_squares.push_back(lambda_sq);
        if (static_cast<int>(slice.eigenvalue_squares.size()) == count) break;
        slice.eigenvalue_squares.push_back(lambda_sq);
        if (static_cast<int>(slice.eigenvalue_squares.size()) == count) break;
    }
    return slice;
}

}  // namespace diracb
