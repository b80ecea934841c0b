#pragma once

// Rank 1 and rank 2 root systems with fixed coordinates.  Simple roots are
// pinned per system (the angle constants downstream are coordinate-free, so
// the choice is inert):
//
//   A1     : l1 = (1, 0)
//   A1xA1  : l1 = (1, 0),  l2 = (0, 1)          (90 deg)
//   A2     : l1 = (1, 0),  l2 = (-1/2, sqrt3/2) (120 deg, both norm 1)
//   B2     : l1 = (1, 0),  l2 = (-1, 1)         (135 deg)
//   G2     : l1 = (1, 0),  l2 = (-3/2, sqrt3/2) (150 deg, norm sqrt3)
//
// The dual basis satisfies (dual[i], simple[j]) = delta_ij under the standard
// dot product.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "conspec/geometry.hpp"

namespace conspec {

enum class SystemKind { A1, A1xA1, A2, B2, G2 };

inline std::string to_string(SystemKind k) {
    switch (k) {
        case SystemKind::A1: return "A1";
        case SystemKind::A1xA1: return "A1xA1";
        case SystemKind::A2: return "A2";
        case SystemKind::B2: return "B2";
        case SystemKind::G2: return "G2";
    }
    throw std::logic_error("unreachable");
}

struct RootSystem {
    SystemKind kind = SystemKind::A1;
    int rank = 1;
    std::vector<Vec2> simple_roots;   // l1 (, l2)
    std::vector<Vec2> positive_roots; // simple roots first
    std::vector<Vec2> roots;          // positive_roots followed by their negatives
    std::vector<Vec2> dual_basis;     // (dual[i], simple[j]) = delta_ij
    int chamber_count = 2;            // *(C)

    int n_positive() const { return static_cast<int>(positive_roots.size()); }
    bool is_negative_index(int idx) const { return idx >= n_positive(); }

    // Index of a root in `roots`, matched with tolerance; -1 if absent.
    int root_index(Vec2 v, double tol = 1e-9) const {
        for (std::size_t i = 0; i < roots.size(); ++i)
            if (approx_eq(roots[i], v, tol)) return static_cast<int>(i);
        return -1;
    }

    int negate_index(int idx) const {
        int n = n_positive();
        return idx < n ? idx + n : idx - n;
    }
};

// Coroot: 2a / (a, a).
inline Vec2 coroot(Vec2 a) { return (2.0 / norm2(a)) * a; }

namespace detail {

// Closure of the simple roots under the reflections they generate.  Purely
// geometric; the Weyl machinery proper lives in weyl.hpp.
inline std::vector<Vec2> root_closure(const std::vector<Vec2>& simple) {
    std::vector<Vec2> all(simple);
    for (Vec2 s : simple) all.push_back(-s);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Vec2> next = all;
        for (Vec2 a : all) {
            Mat2 s = reflection_in(a);
            for (Vec2 b : all) {
                Vec2 im = s.apply(b);
                bool known = false;
                for (Vec2 c : next)
                    if (approx_eq(c, im, 1e-9)) { known = true; break; }
                if (!known) { next.push_back(im); grew = true; }
            }
        }
        all = std::move(next);
    }
    return all;
}

// Positivity: nonnegative coefficients in the simple-root basis.
inline bool is_positive_root(const std::vector<Vec2>& simple, Vec2 v) {
    if (simple.size() == 1) return dot(v, simple[0]) > 0.0;
    Vec2 c = solve2(simple[0], simple[1], v);
    return c.x > -1e-9 && c.y > -1e-9 && (c.x > 1e-9 || c.y > 1e-9);
}

} // namespace detail

inline RootSystem build_root_system(SystemKind kind) {
    const double s3 = std::sqrt(3.0);
    RootSystem rs;
    rs.kind = kind;
    switch (kind) {
        case SystemKind::A1:
            rs.rank = 1;
            rs.simple_roots = {{1.0, 0.0}};
            break;
        case SystemKind::A1xA1:
            rs.rank = 2;
            rs.simple_roots = {{1.0, 0.0}, {0.0, 1.0}};
            break;
        case SystemKind::A2:
            rs.rank = 2;
            rs.simple_roots = {{1.0, 0.0}, {-0.5, s3 / 2.0}};
            break;
        case SystemKind::B2:
            rs.rank = 2;
            rs.simple_roots = {{1.0, 0.0}, {-1.0, 1.0}};
            break;
        case SystemKind::G2:
            rs.rank = 2;
            rs.simple_roots = {{1.0, 0.0}, {-1.5, s3 / 2.0}};
            break;
    }

    std::vector<Vec2> all = detail::root_closure(rs.simple_roots);
    for (Vec2 v : all)
        if (detail::is_positive_root(rs.simple_roots, v)) rs.positive_roots.push_back(v);
    // Simple roots first, the rest by increasing norm then angle; keeps
    // indices stable and readable in dumps.
    std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), [&](Vec2 a, Vec2 b) {
        auto key = [&](Vec2 v) {
            for (std::size_t i = 0; i < rs.simple_roots.size(); ++i)
                if (approx_eq(v, rs.simple_roots[i], 1e-9)) return std::pair<int, double>(static_cast<int>(i), 0.0);
            return std::pair<int, double>(100, std::atan2(v.y, v.x) + 10.0 * norm2(v));
        };
        return key(a) < key(b);
    });
    rs.roots = rs.positive_roots;
    for (Vec2 v : rs.positive_roots) rs.roots.push_back(-v);

    if (rs.rank == 1) {
        Vec2 l1 = rs.simple_roots[0];
        rs.dual_basis = {l1 / norm2(l1)};
        rs.chamber_count = 2;
    } else {
        Vec2 l1 = rs.simple_roots[0], l2 = rs.simple_roots[1];
        // Rows of the inverse Gram-free system: (d_i, l_j) = delta_ij.
        Vec2 d1 = solve2({l1.x, l2.x}, {l1.y, l2.y}, {1.0, 0.0});
        Vec2 d2 = solve2({l1.x, l2.x}, {l1.y, l2.y}, {0.0, 1.0});
        rs.dual_basis = {d1, d2};
        // Each positive root contributes one mirror line through the origin;
        // n distinct lines cut the plane into 2n chambers.
        rs.chamber_count = 2 * rs.n_positive();
    }
    return rs;
}

} // namespace conspec
