#pragma once

// Scalar c-functions per Weyl element: a product of rank-one factors
// ctilde(<Lambda, acheck>) over the inversion set {a > 0 : w a < 0}, with
// acheck = 2a/(a,a).  Spectral points live on the imaginary plane and are
// represented by their imaginary part y (Lambda = i y), so Re Lambda = 0
// holds by construction.
//
// With this factor set the product satisfies the cocycle identity
// c(w1 w2, L) = c(w1, w2 L) c(w2, L) on length-additive factorizations, and
// |c(w, L)| = 1 on the imaginary plane since each factor is unimodular there.

#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "conspec/geometry.hpp"
#include "conspec/root_system.hpp"
#include "conspec/special_functions.hpp"
#include "conspec/weyl.hpp"

namespace conspec {

struct StencilError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A line t -> i (origin + t direction) in the spectral plane.
struct SpectralLine {
    Vec2 origin;
    Vec2 direction; // unit
    Vec2 point(double t) const { return origin + t * direction; }
};

// Piecewise-Chebyshev interpolant of t -> ctilde(i t) on a symmetric range.
// ctilde dominates the cost of every quadrature; the interpolant is built
// once per scenario and certified against the direct evaluation at build
// time, so downstream accuracy contracts are unaffected.
class CtildeCache {
public:
    CtildeCache(double t_abs_max, const PrecisionConfig& cfg = {},
                double panel_width = 0.25, int degree = 20)
        : t_min_(-t_abs_max), panel_width_(panel_width), degree_(degree) {
        if (!(t_abs_max > 0.0)) throw std::invalid_argument("CtildeCache: range must be positive");
        int panels = static_cast<int>(std::ceil(2.0 * t_abs_max / panel_width));
        coef_.resize(panels);
        const int m = degree;
        std::vector<double> cosjk((m + 1) * (m + 1));
        for (int j = 0; j <= m; ++j)
            for (int k = 0; k <= m; ++k)
                cosjk[j * (m + 1) + k] = std::cos(kPi * j * k / m);
        std::vector<cplx> fj(m + 1);
        double worst = 0.0;
        for (int p = 0; p < panels; ++p) {
            double a = t_min_ + p * panel_width_;
            double b = a + panel_width_;
            double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int j = 0; j <= m; ++j)
                fj[j] = ctilde(cplx(0.0, mid + half * std::cos(kPi * j / m)), cfg);
            auto& c = coef_[p];
            c.resize(m + 1);
            for (int k = 0; k <= m; ++k) {
                cplx acc = 0.5 * (fj[0] * cosjk[k] + fj[m] * cosjk[m * (m + 1) + k]);
                for (int j = 1; j < m; ++j) acc += fj[j] * cosjk[j * (m + 1) + k];
                c[k] = (2.0 / m) * acc;
            }
            c[0] *= 0.5;
            c[m] *= 0.5;
            // Certify against the direct path at off-node points.
            for (double frac : {0.21, 0.57, 0.89}) {
                double t = a + frac * panel_width_;
                double err = std::abs(eval(t) - ctilde(cplx(0.0, t), cfg));
                if (err > worst) worst = err;
            }
        }
        certified_error_ = worst;
        if (worst > 5e-13)
            throw std::runtime_error("CtildeCache: certification failed (error " +
                                     std::to_string(worst) + ")");
    }

    bool covers(double t) const {
        return t >= t_min_ && t <= t_min_ + panel_width_ * static_cast<double>(coef_.size());
    }

    cplx eval(double t) const {
        int p = static_cast<int>((t - t_min_) / panel_width_);
        if (p < 0) p = 0;
        if (p >= static_cast<int>(coef_.size())) p = static_cast<int>(coef_.size()) - 1;
        double a = t_min_ + p * panel_width_;
        double x = 2.0 * (t - a) / panel_width_ - 1.0;
        // Clenshaw.
        const auto& c = coef_[p];
        cplx b1 = 0.0, b2 = 0.0;
        for (int k = degree_; k >= 1; --k) {
            cplx b0 = 2.0 * x * b1 - b2 + c[k];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + c[0];
    }

    double certified_error() const { return certified_error_; }

private:
    double t_min_;
    double panel_width_;
    int degree_;
    double certified_error_ = 0.0;
    std::vector<std::vector<cplx>> coef_;
};

// The c-function model attached to one conjugacy class of parabolics.
struct CFunctionSpec {
    enum class FactorKind { completed_zeta_ratio, unit };

    std::shared_ptr<const RootSystem> system{};
    FactorKind factor_kind = FactorKind::completed_zeta_ratio;
    cplx per_class_prefactor = 1.0;
    PrecisionConfig precision{};
    std::shared_ptr<const CtildeCache> cache{};

    // One rank-one factor at the purely imaginary argument i t.
    cplx rank_one_factor(double t) const {
        if (factor_kind == FactorKind::unit) return 1.0;
        if (cache && cache->covers(t)) return cache->eval(t);
        return ctilde(cplx(0.0, t), precision);
    }
};

// c(w, Lambda) at Lambda = i y: prefactor times the product of rank-one
// factors over the inversion set of w.
inline cplx c_value(const CFunctionSpec& spec, const WeylElement& w, Vec2 y) {
    cplx prod = spec.per_class_prefactor;
    for (int i = 0; i < spec.system->n_positive(); ++i) {
        if (!spec.system->is_negative_index(w.root_perm[i])) continue;
        Vec2 acheck = coroot(spec.system->roots[i]);
        prod *= spec.rank_one_factor(dot(y, acheck));
    }
    return prod;
}

struct FdPolicy {
    double step = 1e-4;
    double disagreement_tol = 1e-6;
};

namespace detail {

struct Deriv1 {
    cplx value;
    double disagreement;
};

// Central differences at steps 2h, h, h/2 with one Richardson level; the
// disagreement between the two successive extrapolations is the error
// signal for the returned (finer) one.
template <class G>
Deriv1 richardson_d1(G&& g, double h) {
    cplx d1 = (g(2.0 * h) - g(-2.0 * h)) / (4.0 * h);
    cplx d2 = (g(h) - g(-h)) / (2.0 * h);
    cplx d3 = (g(0.5 * h) - g(-0.5 * h)) / h;
    cplx ra = (4.0 * d2 - d1) / 3.0;
    cplx rb = (4.0 * d3 - d2) / 3.0;
    return {rb, std::abs(rb - ra)};
}

} // namespace detail

// c(w, .)* (d/dLambda) c(w, .) along `direction`, where d/dLambda on the line
// Lambda = i t v means (1/i) d/dt.  On the imaginary plane |c| = 1, which
// makes the result real up to stencil noise.
inline cplx c_star_dc(const CFunctionSpec& spec, const WeylElement& w, Vec2 y,
                      Vec2 direction, const FdPolicy& fd = {}) {
    if (norm2(direction) == 0.0) throw std::domain_error("c_star_dc: zero direction");
    auto g = [&](double t) { return c_value(spec, w, y + t * direction); };
    auto d = detail::richardson_d1(g, fd.step);
    if (d.disagreement > fd.disagreement_tol)
        throw StencilError("c_star_dc: stencil disagreement " + std::to_string(d.disagreement));
    return std::conj(c_value(spec, w, y)) * cplx(0.0, -1.0) * d.value;
}

// c(w_i w_lambda, .)* (d/dLambda) c(w_i, .): the hybrid logarithmic
// derivative entering the orthogonal reflection case.
inline cplx hybrid_term(const CFunctionSpec& spec, const WeylElement& w_i,
                        const WeylElement& w_lambda, Vec2 y, Vec2 direction,
                        const FdPolicy& fd = {}) {
    if (norm2(direction) == 0.0) throw std::domain_error("hybrid_term: zero direction");
    WeylElement prod = compose(*spec.system, w_i, w_lambda);
    auto g = [&](double t) { return c_value(spec, w_i, y + t * direction); };
    auto d = detail::richardson_d1(g, fd.step);
    if (d.disagreement > fd.disagreement_tol)
        throw StencilError("hybrid_term: stencil disagreement " + std::to_string(d.disagreement));
    return std::conj(c_value(spec, prod, y)) * cplx(0.0, -1.0) * d.value;
}

} // namespace conspec
