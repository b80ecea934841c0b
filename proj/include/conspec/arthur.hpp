#pragma once

// The degree-2 polynomial P(H) = 1/2 {(H, l1-hat)(H, d2-hat) +
// (H, d1-hat)(H, l2-hat)} built from the unit-normalized simple roots and
// their duals, its associated constant-coefficient differential operator
// (H replaced by the Lambda-gradient), and the first-order operator along
// -lambda-hat.
//
// Derivatives follow the (1/i) d/dt line convention of c_star_dc and are
// taken by central stencils, step 1e-3, with one Richardson level.

#include <complex>
#include <stdexcept>

#include "conspec/c_function.hpp"
#include "conspec/geometry.hpp"
#include "conspec/root_system.hpp"
#include "conspec/weyl.hpp"

namespace conspec {

struct ArthurPolynomial {
    double q[2][2] = {{0.0, 0.0}, {0.0, 0.0}}; // symmetric

    double eval(Vec2 h) const {
        return q[0][0] * h.x * h.x + (q[0][1] + q[1][0]) * h.x * h.y + q[1][1] * h.y * h.y;
    }
};

inline ArthurPolynomial arthur_poly(const RootSystem& rs) {
    if (rs.rank != 2) throw std::domain_error("arthur_poly: rank-2 system required");
    Vec2 l1 = unit(rs.simple_roots[0]);
    Vec2 l2 = unit(rs.simple_roots[1]);
    Vec2 d1 = unit(rs.dual_basis[0]);
    Vec2 d2 = unit(rs.dual_basis[1]);
    auto sym_outer = [](Vec2 a, Vec2 b, double w, ArthurPolynomial& p) {
        p.q[0][0] += w * a.x * b.x;
        p.q[0][1] += w * 0.5 * (a.x * b.y + a.y * b.x);
        p.q[1][0] += w * 0.5 * (a.y * b.x + a.x * b.y);
        p.q[1][1] += w * a.y * b.y;
    };
    ArthurPolynomial p;
    sym_outer(l1, d2, 0.5, p);
    sym_outer(d1, l2, 0.5, p);
    return p;
}

struct DirectionalOperator {
    int order = 1;
    Vec2 direction;            // order 1: unit direction (e.g. -lambda-hat)
    ArthurPolynomial quadratic; // order 2

    static DirectionalOperator first_order(Vec2 dir) {
        DirectionalOperator op;
        op.order = 1;
        op.direction = unit(dir);
        return op;
    }
    static DirectionalOperator second_order(const ArthurPolynomial& p) {
        DirectionalOperator op;
        op.order = 2;
        op.quadratic = p;
        return op;
    }
};

struct Fd2Policy {
    double step = 1e-3;
    double disagreement_tol = 1e-5;
};

// Sum_jk Q_jk d^2 f / dLambda_j dLambda_k at Lambda = i y0.  With the line
// convention each dLambda contributes a factor 1/i, so the operator equals
// minus the spatial Hessian contraction.  9-point stencils at 2h, h, h/2
// with one Richardson level; successive extrapolations must agree.
template <class F>
cplx apply_second_order(const DirectionalOperator& op, F&& f, Vec2 y0,
                        const Fd2Policy& fd = {}) {
    if (op.order != 2) throw std::domain_error("apply_second_order: order-2 operator required");
    const cplx f0 = f(y0);
    auto contraction = [&](double h) {
        cplx fxx = (f({y0.x + h, y0.y}) - 2.0 * f0 + f({y0.x - h, y0.y})) / (h * h);
        cplx fyy = (f({y0.x, y0.y + h}) - 2.0 * f0 + f({y0.x, y0.y - h})) / (h * h);
        cplx fxy = (f({y0.x + h, y0.y + h}) - f({y0.x + h, y0.y - h}) -
                    f({y0.x - h, y0.y + h}) + f({y0.x - h, y0.y - h})) /
                   (4.0 * h * h);
        return op.quadratic.q[0][0] * fxx + (op.quadratic.q[0][1] + op.quadratic.q[1][0]) * fxy +
               op.quadratic.q[1][1] * fyy;
    };
    cplx a1 = contraction(2.0 * fd.step);
    cplx a2 = contraction(fd.step);
    cplx a3 = contraction(0.5 * fd.step);
    cplx ra = (4.0 * a2 - a1) / 3.0;
    cplx rb = (4.0 * a3 - a2) / 3.0;
    double disagreement = std::abs(rb - ra);
    if (disagreement > fd.disagreement_tol)
        throw StencilError("apply_second_order: stencil disagreement " +
                           std::to_string(disagreement));
    return -rb;
}

// First derivative of f at Lambda = i y0 along -lambda-hat, same convention
// and stencil policy.
template <class F>
cplx apply_D_lambda(const ReflectionData& rd, F&& f, Vec2 y0, const Fd2Policy& fd = {}) {
    Vec2 dir = -unit(rd.root);
    auto g = [&](double t) { return f(y0 + t * dir); };
    auto d = detail::richardson_d1(g, fd.step);
    if (d.disagreement > fd.disagreement_tol)
        throw StencilError("apply_D_lambda: stencil disagreement " +
                           std::to_string(d.disagreement));
    return cplx(0.0, -1.0) * d.value;
}

} // namespace conspec
