#pragma once

// Weyl group enumeration and the per-element data consumed by the
// contribution formulas: rank(1 - w), Ker(1 - w), the restricted determinant,
// inversion sets, and the reflection angle constants.
//
// Every element carries, besides its matrix, the exact permutation it induces
// on the root list.  Identities that hold exactly in the group (w(l) = -l for
// the reflection root, classification of the identity) are decided through the
// permutation, so no tolerance leaks into them.

#include <cmath>
#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "conspec/geometry.hpp"
#include "conspec/root_system.hpp"

namespace conspec {

struct WeylElement {
    Mat2 matrix;
    int dim = 2;                    // rank of the ambient system
    std::vector<int> word;          // simple-reflection indices, 0-based
    std::vector<int> root_perm;     // roots[i] -> roots[root_perm[i]]
    int rank_one_minus_w = 0;
    std::vector<Vec2> kernel_basis; // spans Ker(1 - w); size = dim - rank(1 - w)
    double restricted_det_abs = 1.0;

    bool is_identity() const { return rank_one_minus_w == 0; }

    std::string word_str() const {
        if (word.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (i) s += '.';
            s += 's';
            s += std::to_string(word[i] + 1);
        }
        return s;
    }
};

namespace detail {

// Root image under w, looked up through the exact permutation.
inline Vec2 perm_image(const RootSystem& rs, const WeylElement& w, int root_idx) {
    return rs.roots[w.root_perm[root_idx]];
}

inline bool perm_is_identity(const std::vector<int>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) return false;
    return true;
}

// Fills rank_one_minus_w, kernel_basis and restricted_det_abs from the
// matrix + permutation already stored in `w`.
inline void classify_element(const RootSystem& rs, WeylElement& w) {
    const double tol = 1e-9;
    if (perm_is_identity(w.root_perm)) {
        w.rank_one_minus_w = 0;
        w.restricted_det_abs = 1.0;
        w.kernel_basis.clear();
        w.kernel_basis.push_back({1.0, 0.0});
        if (w.dim == 2) w.kernel_basis.push_back({0.0, 1.0});
        return;
    }
    if (w.dim == 1) {
        // Nontrivial element of a rank-1 group: w = -1 on the line.
        w.rank_one_minus_w = 1;
        w.kernel_basis.clear();
        int i0 = 0; // the positive root
        Vec2 l = rs.roots[i0];
        Vec2 img = perm_image(rs, w, i0); // exactly -l
        w.restricted_det_abs = dot(l - img, l) / dot(l, l);
        return;
    }
    Mat2 a = one_minus(w.matrix);
    if (std::abs(a.det()) > tol) {
        w.rank_one_minus_w = 2;
        w.kernel_basis.clear();
        w.restricted_det_abs = std::abs(a.det());
        return;
    }
    // Reflection: exactly one positive root is sent to its negative.
    w.rank_one_minus_w = 1;
    int found = -1;
    for (int i = 0; i < rs.n_positive(); ++i) {
        if (w.root_perm[i] == rs.negate_index(i)) {
            if (found < 0 || norm2(rs.roots[i]) < norm2(rs.roots[found])) found = i;
        }
    }
    if (found < 0) throw std::logic_error("reflection without negated positive root");
    Vec2 l = rs.roots[found];
    Vec2 img = perm_image(rs, w, found); // exactly -l, so the quotient below is exactly 2
    w.restricted_det_abs = dot(l - img, l) / dot(l, l);
    w.kernel_basis.clear();
    w.kernel_basis.push_back(rot90(unit(l)));
}

} // namespace detail

// The full group generated by the simple reflections, breadth-first, so every
// word is reduced.  Elements are deduplicated by their exact root permutation.
inline std::vector<WeylElement> enumerate_weyl(const RootSystem& rs) {
    const int nroots = static_cast<int>(rs.roots.size());
    const int ngen = static_cast<int>(rs.simple_roots.size());

    // Generators.
    std::vector<Mat2> gen_mat(ngen);
    std::vector<std::vector<int>> gen_perm(ngen);
    for (int g = 0; g < ngen; ++g) {
        gen_mat[g] = reflection_in(rs.simple_roots[g]);
        gen_perm[g].resize(nroots);
        for (int i = 0; i < nroots; ++i) {
            int j = rs.root_index(gen_mat[g].apply(rs.roots[i]));
            if (j < 0) throw std::logic_error("simple reflection does not permute the roots");
            gen_perm[g][i] = j;
        }
    }

    std::vector<WeylElement> out;
    WeylElement id;
    id.dim = rs.rank;
    id.root_perm.resize(nroots);
    for (int i = 0; i < nroots; ++i) id.root_perm[i] = i;
    out.push_back(id);

    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop_front();
        for (int g = 0; g < ngen; ++g) {
            WeylElement next;
            next.dim = rs.rank;
            next.matrix = out[cur].matrix * gen_mat[g]; // w' = w . s_g
            next.word = out[cur].word;
            next.word.push_back(g);
            next.root_perm.resize(nroots);
            for (int i = 0; i < nroots; ++i)
                next.root_perm[i] = out[cur].root_perm[gen_perm[g][i]];
            bool known = false;
            for (const auto& e : out)
                if (e.root_perm == next.root_perm) { known = true; break; }
            if (!known) {
                out.push_back(std::move(next));
                frontier.push_back(out.size() - 1);
            }
        }
    }
    for (auto& w : out) detail::classify_element(rs, w);
    return out;
}

inline int classify(const WeylElement& w) { return w.rank_one_minus_w; }

// w1 . w2, with the word concatenated (not re-reduced; the permutation is
// what downstream consumers key on).
inline WeylElement compose(const RootSystem& rs, const WeylElement& w1, const WeylElement& w2) {
    WeylElement r;
    r.dim = rs.rank;
    r.matrix = w1.matrix * w2.matrix;
    r.word = w1.word;
    r.word.insert(r.word.end(), w2.word.begin(), w2.word.end());
    r.root_perm.resize(rs.roots.size());
    for (std::size_t i = 0; i < rs.roots.size(); ++i)
        r.root_perm[i] = w1.root_perm[w2.root_perm[i]];
    detail::classify_element(rs, r);
    return r;
}

// {a > 0 : w a < 0}; its size equals the reduced word length of w.
inline std::vector<Vec2> inversion_set(const RootSystem& rs, const WeylElement& w) {
    std::vector<Vec2> out;
    for (int i = 0; i < rs.n_positive(); ++i)
        if (rs.is_negative_index(w.root_perm[i])) out.push_back(rs.roots[i]);
    return out;
}

struct ReflectionData {
    Vec2 root;                   // the representative lambda, w(lambda) = -lambda
    int root_index = -1;
    double theta1 = 0.0;         // angle between lambda and l1
    double theta2 = 0.0;         // angle between lambda and l2 (0 in rank 1)
    bool perp1 = false;          // lambda orthogonal to l1
    bool perp2 = false;
    double star_c_lambda = 2.0;  // *(C(lambda))
    Vec2 kernel_dir;             // unit spanning Ker(1 - w); rot90 of lambda-hat
};

inline ReflectionData reflection_data(const RootSystem& rs, const WeylElement& w) {
    if (classify(w) != 1)
        throw std::domain_error("reflection_data: element is not a reflection");
    ReflectionData rd;
    // Shortest positive root sent to its negative (unique in reduced systems).
    for (int i = 0; i < rs.n_positive(); ++i) {
        if (w.root_perm[i] == rs.negate_index(i)) {
            if (rd.root_index < 0 || norm2(rs.roots[i]) < norm2(rs.roots[rd.root_index]))
                rd.root_index = i;
        }
    }
    if (rd.root_index < 0) throw std::logic_error("reflection_data: no negated positive root");
    rd.root = rs.roots[rd.root_index];

    Vec2 l1 = rs.simple_roots[0];
    rd.theta1 = angle_between(rd.root, l1);
    rd.perp1 = std::abs(dot(rd.root, l1)) <= 1e-12 * norm(rd.root) * norm(l1);
    if (rs.rank == 2) {
        Vec2 l2 = rs.simple_roots[1];
        rd.theta2 = angle_between(rd.root, l2);
        rd.perp2 = std::abs(dot(rd.root, l2)) <= 1e-12 * norm(rd.root) * norm(l2);
        rd.kernel_dir = rot90(unit(rd.root));
    }
    rd.star_c_lambda = 2.0;
    return rd;
}

// sin(t1 + t2) / (cos t1 cos t2); the case-I angle constant.
inline double case_constant_I(const ReflectionData& rd) {
    if (rd.perp1 || rd.perp2)
        throw std::domain_error("case_constant_I: lambda orthogonal to a simple root");
    return std::sin(rd.theta1 + rd.theta2) / (std::cos(rd.theta1) * std::cos(rd.theta2));
}

// cot(pi - t12) for t12 the angle between the simple roots.  Computed from
// the cosine so that the orthogonal case comes out exactly zero.
inline double case_constant_II2(const RootSystem& rs) {
    if (rs.rank != 2)
        throw std::domain_error("case_constant_II2: rank-2 system required");
    Vec2 l1 = rs.simple_roots[0], l2 = rs.simple_roots[1];
    double c = dot(l1, l2) / (norm(l1) * norm(l2)); // <= 0 for simple roots
    return -c / std::sqrt(1.0 - c * c);
}

} // namespace conspec
