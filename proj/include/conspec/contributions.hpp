#pragma once

// Every boxed contribution formula, evaluated: the rank-1 identity and
// reflection terms, the maximal-level associate/non-associate cases, and the
// minimal-level cases split by rank(1 - w) with the three reflection
// subcases.  Case constants are assembled as literal products of the
// prefactors so tests can pin each factor separately; integrals run through
// the quadrature engine and carry node-doubling error estimates.

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "conspec/arthur.hpp"
#include "conspec/c_function.hpp"
#include "conspec/quadrature.hpp"
#include "conspec/scenario.hpp"
#include "conspec/weyl.hpp"

namespace conspec {

enum class CaseTag {
    R1_ID,
    R1_REFL,
    MAX_I,
    MAX_II_ID,
    MAX_II_REFL,
    MIN_R0,
    MIN_R1_I,
    MIN_R1_II1,
    MIN_R1_II2,
    MIN_R2,
};

inline std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::R1_ID: return "R1_ID";
        case CaseTag::R1_REFL: return "R1_REFL";
        case CaseTag::MAX_I: return "MAX_I";
        case CaseTag::MAX_II_ID: return "MAX_II_ID";
        case CaseTag::MAX_II_REFL: return "MAX_II_REFL";
        case CaseTag::MIN_R0: return "MIN_R0";
        case CaseTag::MIN_R1_I: return "MIN_R1_I";
        case CaseTag::MIN_R1_II1: return "MIN_R1_II1";
        case CaseTag::MIN_R1_II2: return "MIN_R1_II2";
        case CaseTag::MIN_R2: return "MIN_R2";
    }
    throw std::logic_error("unreachable");
}

inline CaseTag case_tag_from_string(const std::string& s) {
    for (CaseTag t : {CaseTag::R1_ID, CaseTag::R1_REFL, CaseTag::MAX_I, CaseTag::MAX_II_ID,
                      CaseTag::MAX_II_REFL, CaseTag::MIN_R0, CaseTag::MIN_R1_I,
                      CaseTag::MIN_R1_II1, CaseTag::MIN_R1_II2, CaseTag::MIN_R2})
        if (to_string(t) == s) return t;
    throw std::invalid_argument("unknown case tag: " + s);
}

struct ContributionTerm {
    std::string class_id;
    std::string weyl_word;
    int rank_one_minus_w = 0;
    CaseTag tag = CaseTag::R1_ID;
    double constant = 0.0; // closed-form prefactor product
    cplx value;            // constant times the evaluated integral/point data
    double error_estimate = 0.0;
};

// ---------------------------------------------------------------------------
// Case constants.

// -(1/2pi) (1/*(C)); prefaces the line integrals at rank-1 and maximal level.
inline double r1_identity_constant(int star_c) { return -1.0 / (kTwoPi * star_c); }

// -(1/2pi) 2pi (1/*(C)) (1/|det(1-w)|); the Fourier and Dirac constants cancel.
inline double r1_reflection_constant(int star_c, double det_abs) {
    return -1.0 / (star_c * det_abs);
}

// -(1/(2pi)^2) (1/*(C)); the rank-2 identity (Arthur operator) term.
inline double min_r0_constant(int star_c) { return -1.0 / (kTwoPi * kTwoPi * star_c); }

// -(1/(2pi)^2) (2pi)^2 (1/*(C)) (1/|det(1-w)|); again a clean cancellation.
inline double min_r2_constant(int star_c, double det_abs) {
    return -1.0 / (star_c * det_abs);
}

// The factor bundle shared by the three rank(1-w) = 1 subcases, stored one
// factor per slot: Fourier 1/(2pi)^2, Dirac 2pi, 1/*(C(lambda)), the
// restricted determinant 1/2, and the change-of-variables 1/2.
struct MinR1Constants {
    double fourier_inv = 1.0 / (kTwoPi * kTwoPi);
    double dirac = kTwoPi;
    double inv_star_c_lambda = 0.5;
    double inv_restricted_det = 0.5;
    double change_of_variables = 0.5;

    double product() const {
        return -(fourier_inv * dirac * inv_star_c_lambda * inv_restricted_det *
                 change_of_variables);
    }
};

// ---------------------------------------------------------------------------
// Shared evaluation helpers.

namespace detail {

inline double class_symbol_1d(const ParabolicClass& cl, double t) {
    double acc = 0.0;
    for (const auto& ch : cl.orbits) acc += ch.symbol.eval1(t);
    return acc;
}

inline double class_symbol_2d(const ParabolicClass& cl, Vec2 y) {
    double acc = 0.0;
    for (const auto& ch : cl.orbits) acc += ch.symbol.eval2(y);
    return acc;
}

inline double class_symbol_zero(const ParabolicClass& cl) {
    double acc = 0.0;
    for (const auto& ch : cl.orbits) acc += ch.symbol.poly_at(0.0);
    return acc;
}

// Sum over `ws` of the line integral of h . c(w)* dc(w) along the class's
// one-dimensional spectral line.
inline QuadResult line_log_derivative_sum(const ParabolicClass& cl,
                                          const std::vector<const WeylElement*>& ws,
                                          const QuadratureSpec& q, const FdPolicy& fd) {
    Vec2 dir = unit(cl.datum->simple_roots[0]);
    cplx total = 0.0;
    double est = 0.0;
    for (const WeylElement* w : ws) {
        auto f = [&](double t) -> cplx {
            Vec2 y = t * dir;
            return class_symbol_1d(cl, t) * c_star_dc(cl.cspec, *w, y, dir, fd);
        };
        QuadResult r = quad_line(f, q.half_width, q.nodes, q.panels);
        total += r.value;
        est += r.error_estimate;
    }
    return {total, est};
}

inline const WeylElement& nontrivial_rank1_element(const ParabolicClass& cl) {
    for (const auto& w : cl.weyl)
        if (!w.is_identity()) return w;
    throw std::logic_error("rank-1 Weyl group without nontrivial element");
}

inline const WeylElement& simple_reflection(const ParabolicClass& cl, int index) {
    for (const auto& w : cl.weyl)
        if (w.word.size() == 1 && w.word[0] == index) return w;
    throw std::logic_error("simple reflection not found in enumeration");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Rank-1 boxes.

// -(1/2pi) (1/*(C)) Sum_{w in W(A)} int h . c(w)* (d/dLambda) c(w) |dLambda|.
// The identity summand is exactly zero (its c-function is constant); it is
// still integrated, which costs nothing and keeps the symmetric form.
inline ContributionTerm con_rank1_identity(const Scenario& sc) {
    if (sc.rank() != 1) throw std::domain_error("con_rank1_identity: rank-1 scenario required");
    const ParabolicClass& cl = sc.minimal;
    std::vector<const WeylElement*> ws;
    for (const auto& w : cl.weyl) ws.push_back(&w);
    double c = r1_identity_constant(cl.datum->chamber_count);
    QuadResult r = detail::line_log_derivative_sum(cl, ws, sc.quad, sc.fd1);
    return {cl.name, "*", 0, CaseTag::R1_ID, c, c * r.value, std::abs(c) * r.error_estimate};
}

// -(1/2pi) 2pi (1/*(C)) (1/|det(1-w)|) h(0) c(w, 0); the constant is -1/4.
inline ContributionTerm con_rank1_reflection(const Scenario& sc, const WeylElement& w) {
    if (sc.rank() != 1) throw std::domain_error("con_rank1_reflection: rank-1 scenario required");
    if (w.is_identity()) throw std::domain_error("con_rank1_reflection: w must be nontrivial");
    const ParabolicClass& cl = sc.minimal;
    double c = r1_reflection_constant(cl.datum->chamber_count, w.restricted_det_abs);
    cplx v = c * detail::class_symbol_zero(cl) * c_value(cl.cspec, w, {0.0, 0.0});
    return {cl.name, w.word_str(), 1, CaseTag::R1_REFL, c, v, 0.0};
}

// ---------------------------------------------------------------------------
// Maximal level.

// Associate layout: per class one integral term carrying the cross-class
// c-function of the single exchange element.  Non-associate layout: per class
// the W(A') line-integral sum plus the w' point term.
inline std::vector<ContributionTerm> con_max(const Scenario& sc) {
    if (sc.rank() != 2) throw std::domain_error("con_max: rank-2 scenario required");
    std::vector<ContributionTerm> out;
    for (const ParabolicClass& cl : sc.maximal) {
        const WeylElement& cross = detail::nontrivial_rank1_element(cl);
        if (sc.associate) {
            double c = r1_identity_constant(cl.datum->chamber_count);
            QuadResult r = detail::line_log_derivative_sum(cl, {&cross}, sc.quad, sc.fd1);
            out.push_back({cl.name, "1", 0, CaseTag::MAX_I, c, c * r.value,
                           std::abs(c) * r.error_estimate});
        } else {
            std::vector<const WeylElement*> ws;
            for (const auto& w : cl.weyl) ws.push_back(&w);
            double c = r1_identity_constant(cl.datum->chamber_count);
            QuadResult r = detail::line_log_derivative_sum(cl, ws, sc.quad, sc.fd1);
            out.push_back({cl.name, "*", 0, CaseTag::MAX_II_ID, c, c * r.value,
                           std::abs(c) * r.error_estimate});
            double cp = r1_reflection_constant(cl.datum->chamber_count, cross.restricted_det_abs);
            cplx v = cp * detail::class_symbol_zero(cl) * c_value(cl.cspec, cross, {0.0, 0.0});
            out.push_back({cl.name, cross.word_str(), 1, CaseTag::MAX_II_REFL, cp, v, 0.0});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minimal level, rank(1 - w) = 0 and 2.

// -(1/(2pi)^2) (1/*(C)) Sum_{w} int h . c(w)* (D_P^G c(w)) over the spectral
// plane.  The w = 1 summand vanishes identically and is skipped.
inline ContributionTerm con_min_rank0(const Scenario& sc) {
    if (sc.rank() != 2) throw std::domain_error("con_min_rank0: rank-2 scenario required");
    const ParabolicClass& cl = sc.minimal;
    ArthurPolynomial p = arthur_poly(*cl.datum);
    DirectionalOperator op = DirectionalOperator::second_order(p);
    double c = min_r0_constant(cl.datum->chamber_count);
    auto f = [&](double y1, double y2) -> cplx {
        Vec2 y{y1, y2};
        cplx acc = 0.0;
        for (const auto& w : cl.weyl) {
            if (w.is_identity()) continue; // constant c-function, zero summand
            auto cw = [&](Vec2 yy) { return c_value(cl.cspec, w, yy); };
            acc += std::conj(c_value(cl.cspec, w, y)) * apply_second_order(op, cw, y, sc.fd2);
        }
        return detail::class_symbol_2d(cl, y) * acc;
    };
    QuadResult r = quad_plane(f, sc.quad.half_width, sc.quad.nodes, sc.quad.panels);
    // The integrand carries second-difference rounding noise ~ eps/h^2 per
    // evaluation, which node doubling cannot see; fold its integrated scale
    // into the estimate.
    double area = 4.0 * sc.quad.half_width * sc.quad.half_width;
    double n_fine = 2.0 * sc.quad.nodes * sc.quad.panels;
    double stencil_noise = 16.0 * 2.2e-16 / (sc.fd2.step * sc.fd2.step) * area / n_fine;
    return {cl.name, "*", 0, CaseTag::MIN_R0, c, c * r.value,
            std::abs(c) * (r.error_estimate + stencil_noise)};
}

// -(1/*(C)) (1/|det(1-w)|) h(0) c(w, 0) for nonsingular 1 - w.
inline ContributionTerm con_min_rank2(const Scenario& sc, const WeylElement& w) {
    if (sc.rank() != 2) throw std::domain_error("con_min_rank2: rank-2 scenario required");
    if (classify(w) != 2) throw std::domain_error("con_min_rank2: rank(1-w) = 2 required");
    const ParabolicClass& cl = sc.minimal;
    double c = min_r2_constant(cl.datum->chamber_count, w.restricted_det_abs);
    cplx v = c * detail::class_symbol_zero(cl) * c_value(cl.cspec, w, {0.0, 0.0});
    return {cl.name, w.word_str(), 2, CaseTag::MIN_R2, c, v, 0.0};
}

// ---------------------------------------------------------------------------
// Minimal level, rank(1 - w) = 1.

// Case I when lambda is orthogonal to neither simple root: the angle constant
// times the orthogonal derivative D_lambda of the kernel-line integral of
// h . c(w_lambda).  Case II (lambda perp lambda_i) contributes the hybrid
// line integral (II1) plus the cot(pi - theta12)-weighted orthogonal
// derivative (II2), which vanishes exactly when the simple roots are
// orthogonal.
inline std::vector<ContributionTerm> con_min_rank1(const Scenario& sc, const WeylElement& w) {
    if (sc.rank() != 2) throw std::domain_error("con_min_rank1: rank-2 scenario required");
    if (classify(w) != 1) throw std::domain_error("con_min_rank1: reflection required");
    const ParabolicClass& cl = sc.minimal;
    ReflectionData rd = reflection_data(*cl.datum, w);
    const MinR1Constants bundle;
    const Vec2 kdir = rd.kernel_dir;

    double inner_est = 0.0;
    auto kernel_integral = [&](Vec2 offset) -> cplx {
        auto f = [&](double u) -> cplx {
            Vec2 y = u * kdir + offset;
            return detail::class_symbol_2d(cl, y) * c_value(cl.cspec, w, y);
        };
        QuadResult r = quad_line(f, sc.quad.half_width, sc.quad.nodes, sc.quad.panels);
        inner_est = std::max(inner_est, r.error_estimate);
        return r.value;
    };
    auto orthogonal_derivative = [&]() -> std::pair<cplx, double> {
        inner_est = 0.0;
        cplx d = apply_D_lambda(rd, kernel_integral, {0.0, 0.0}, sc.fd2);
        // Central differences divide the quadrature noise by the step.
        return {d, 2.0 * inner_est / sc.fd2.step};
    };

    std::vector<ContributionTerm> out;
    if (!rd.perp1 && !rd.perp2) {
        double c = bundle.product() * case_constant_I(rd);
        auto [d, est] = orthogonal_derivative();
        out.push_back({cl.name, w.word_str(), 1, CaseTag::MIN_R1_I, c, c * d,
                       std::abs(c) * est});
    } else {
        int i = rd.perp1 ? 0 : 1;
        const WeylElement& wi = detail::simple_reflection(cl, i);
        double c1 = bundle.product();
        auto f1 = [&](double u) -> cplx {
            Vec2 y = u * kdir;
            return detail::class_symbol_2d(cl, y) * hybrid_term(cl.cspec, wi, w, y, kdir, sc.fd1);
        };
        QuadResult r1 = quad_line(f1, sc.quad.half_width, sc.quad.nodes, sc.quad.panels);
        out.push_back({cl.name, w.word_str(), 1, CaseTag::MIN_R1_II1, c1, c1 * r1.value,
                       std::abs(c1) * r1.error_estimate});

        double cot = case_constant_II2(*cl.datum);
        double c2 = bundle.product() * cot;
        if (cot == 0.0) {
            out.push_back({cl.name, w.word_str(), 1, CaseTag::MIN_R1_II2, 0.0, 0.0, 0.0});
        } else {
            auto [d, est] = orthogonal_derivative();
            out.push_back({cl.name, w.word_str(), 1, CaseTag::MIN_R1_II2, c2, c2 * d,
                           std::abs(c2) * est});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Totals.

struct Report {
    std::vector<ContributionTerm> terms;
    std::vector<std::pair<std::string, cplx>> class_totals;
    cplx grand_total;
    double max_error_estimate = 0.0;
    std::vector<std::string> failures;

    bool all_ok() const { return failures.empty(); }
};

// Evaluates every case over all classes and Weyl elements of the scenario.
inline Report total_contribution(const Scenario& sc) {
    sc.validate();
    Report rep;
    auto guarded = [&](const std::string& what, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            rep.failures.push_back(what + ": " + e.what());
        }
    };

    if (sc.rank() == 1) {
        guarded("C/R1_ID", [&] { rep.terms.push_back(con_rank1_identity(sc)); });
        for (const auto& w : sc.minimal.weyl)
            if (classify(w) == 1)
                guarded("C/R1_REFL/" + w.word_str(),
                        [&] { rep.terms.push_back(con_rank1_reflection(sc, w)); });
    } else {
        guarded("C/MIN_R0", [&] { rep.terms.push_back(con_min_rank0(sc)); });
        for (const auto& w : sc.minimal.weyl)
            if (classify(w) == 1)
                guarded("C/MIN_R1/" + w.word_str(), [&] {
                    for (auto& t : con_min_rank1(sc, w)) rep.terms.push_back(std::move(t));
                });
        for (const auto& w : sc.minimal.weyl)
            if (classify(w) == 2)
                guarded("C/MIN_R2/" + w.word_str(),
                        [&] { rep.terms.push_back(con_min_rank2(sc, w)); });
        guarded("max", [&] {
            for (auto& t : con_max(sc)) rep.terms.push_back(std::move(t));
        });
    }

    for (const auto* cl : sc.all_classes()) {
        cplx total = 0.0;
        for (const auto& t : rep.terms)
            if (t.class_id == cl->name) total += t.value;
        rep.class_totals.emplace_back(cl->name, total);
        rep.grand_total += total;
    }
    for (const auto& t : rep.terms)
        rep.max_error_estimate = std::max(rep.max_error_estimate, t.error_estimate);
    return rep;
}

// ---------------------------------------------------------------------------
// Dirac normalization.

struct DiracReport {
    std::vector<double> eps;
    std::vector<double> raw; // int h(t) 2 eps / (eps^2 + t^2) dt
    double extrapolated = 0.0;
    double expected = 0.0; // 2 pi h(0)
    double abs_error = 0.0;
    double normalized_error = 0.0; // abs_error / 2 pi
    bool converged = false;
};

// Confirms lim_{eps -> 0} int h(t) 2 eps/(eps^2 + t^2) dt = 2 pi h(0) by
// polynomial extrapolation over the eps sequence.  The substitution
// t = eps tan(theta) turns each integral into a smooth fixed-domain one, so
// the small-eps evaluations stay exact to quadrature precision.
template <class H>
DiracReport dirac_normalization_check(H&& h, std::vector<double> eps = {0.1, 0.05, 0.025},
                                      int nodes = 96, int panels = 2) {
    if (eps.size() < 2) throw std::invalid_argument("dirac_normalization_check: need >= 2 eps");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0)) throw std::invalid_argument("dirac_normalization_check: eps > 0");
        if (i && !(eps[i] < eps[i - 1]))
            throw std::invalid_argument("dirac_normalization_check: eps must decrease");
    }
    DiracReport rep;
    rep.eps = eps;
    for (double e : eps) {
        auto f = [&](double th) -> cplx { return cplx(2.0 * h(e * std::tan(th)), 0.0); };
        rep.raw.push_back(quad_line(f, kPi / 2.0, nodes, panels).value.real());
    }
    // Neville tableau evaluated at eps = 0.
    std::vector<double> col = rep.raw;
    double prev_top = col[0];
    double last_correction = 0.0;
    for (std::size_t level = 1; level < eps.size(); ++level) {
        for (std::size_t i = 0; i + level < eps.size(); ++i) {
            double xi = eps[i], xj = eps[i + level];
            col[i] = (xi * col[i + 1] - xj * col[i]) / (xi - xj);
        }
        last_correction = std::abs(col[0] - prev_top);
        prev_top = col[0];
    }
    rep.extrapolated = col[0];
    rep.expected = kTwoPi * h(0.0);
    rep.abs_error = std::abs(rep.extrapolated - rep.expected);
    rep.normalized_error = rep.abs_error / kTwoPi;
    rep.converged = last_correction <= 0.05 * (1.0 + std::abs(rep.extrapolated));
    if (!rep.converged)
        throw std::runtime_error("dirac_normalization_check: extrapolation did not converge");
    return rep;
}

} // namespace conspec
