#pragma once

// Test-side oracles, deliberately independent of the implementation paths
// they check: direct series summation, brute-force group enumeration,
// Simpson integration on uniform grids, plain central differences.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "conspec/geometry.hpp"
#include "conspec/root_system.hpp"

namespace oracles {

using cplx = std::complex<double>;

// zeta by direct series for Re s >= 2, with the two-term tail correction
// sum_{n>N} n^{-s} = N^{1-s}/(s-1) - N^{-s}/2 + O(|s| N^{-Re s - 1}), leaving
// an error well below 1e-13 for N = 2e5 at Re s >= 2.
inline cplx zeta_direct_series(cplx s, int n_terms = 200000) {
    cplx acc = 0.0;
    for (int n = n_terms; n >= 1; --n) acc += std::pow(static_cast<double>(n), -s);
    double nd = n_terms;
    acc += std::pow(nd, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(nd, -s);
    return acc;
}

// All distinct matrices expressible as products of the simple reflections,
// generated by plain repeated multiplication up to a fixed length.  No
// permutation bookkeeping, no BFS: an independent route to the Weyl group.
inline std::vector<conspec::Mat2> weyl_matrices_brute_force(const conspec::RootSystem& rs,
                                                            int max_len = 12) {
    using conspec::Mat2;
    std::vector<Mat2> gens;
    for (auto r : rs.simple_roots) gens.push_back(conspec::reflection_in(r));
    auto same = [](const Mat2& a, const Mat2& b) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (std::abs(a.m[i][j] - b.m[i][j]) > 1e-9) return false;
        return true;
    };
    std::vector<Mat2> found{Mat2::identity()};
    std::vector<Mat2> layer{Mat2::identity()};
    for (int len = 1; len <= max_len && !layer.empty(); ++len) {
        std::vector<Mat2> next;
        for (const auto& m : layer) {
            for (const auto& g : gens) {
                Mat2 p = m * g;
                bool known = false;
                for (const auto& f : found)
                    if (same(f, p)) { known = true; break; }
                if (!known) {
                    found.push_back(p);
                    next.push_back(p);
                }
            }
        }
        layer = std::move(next);
    }
    return found;
}

// (identity, reflections, nonsingular) census from raw matrices.
struct Census {
    int identity = 0;
    int reflections = 0;
    int rank2 = 0;
};

inline Census census_of(const std::vector<conspec::Mat2>& mats, int dim) {
    Census c;
    for (const auto& m : mats) {
        conspec::Mat2 a = conspec::one_minus(m);
        if (dim == 1) {
            if (std::abs(a.m[0][0]) < 1e-9)
                ++c.identity;
            else
                ++c.reflections;
            continue;
        }
        double frob = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) frob += a.m[i][j] * a.m[i][j];
        if (frob < 1e-18)
            ++c.identity;
        else if (std::abs(a.det()) < 1e-9)
            ++c.reflections;
        else
            ++c.rank2;
    }
    return c;
}

// Chamber count by sweeping directions and counting distinct sign vectors
// against the positive-root hyperplanes.
inline int chamber_count_sweep(const conspec::RootSystem& rs, int samples = 14400) {
    if (rs.rank == 1) return 2;
    std::vector<std::vector<int>> seen;
    for (int k = 0; k < samples; ++k) {
        double th = 2.0 * M_PI * (k + 0.37) / samples;
        conspec::Vec2 d{std::cos(th), std::sin(th)};
        std::vector<int> sig;
        bool near_wall = false;
        for (auto r : rs.positive_roots) {
            double p = conspec::dot(d, r);
            if (std::abs(p) < 1e-6) { near_wall = true; break; }
            sig.push_back(p > 0 ? 1 : -1);
        }
        if (near_wall) continue;
        bool known = false;
        for (const auto& s : seen)
            if (s == sig) { known = true; break; }
        if (!known) seen.push_back(sig);
    }
    return static_cast<int>(seen.size());
}

// Composite Simpson on a uniform grid (independent of Gauss-Legendre).
inline cplx simpson(const std::function<cplx(double)>& f, double a, double b, int intervals) {
    if (intervals % 2) ++intervals;
    double h = (b - a) / intervals;
    cplx acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

// Plain second-order central difference, no extrapolation.
inline cplx central_diff(const std::function<cplx(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// One-sided five-point first derivative, order 4.
inline cplx one_sided_diff4(const std::function<cplx(double)>& f, double x, double h) {
    return (-25.0 * f(x) + 48.0 * f(x + h) - 36.0 * f(x + 2 * h) + 16.0 * f(x + 3 * h) -
            3.0 * f(x + 4 * h)) /
           (12.0 * h);
}

} // namespace oracles
