#pragma once

// Composite Gauss-Legendre quadrature over truncated lines and planes, with a
// node-doubling error estimate.  |dLambda| is Lebesgue measure in the real
// coordinates t of Lambda = i t (basis), which is how every integral in the
// contribution formulas is parameterized.

#include <cmath>
#include <complex>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "conspec/special_functions.hpp"

namespace conspec {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Nodes and weights on [-1, 1] by Newton iteration on the Legendre
// polynomial (gauleg).
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

namespace detail {

// Composite rule points over [-T, T]: `panels` equal panels, n nodes each.
inline void composite_points(double half_width, int nodes, int panels,
                             std::vector<double>& ts, std::vector<double>& ws) {
    std::vector<double> x, w;
    gauss_legendre(nodes, x, w);
    ts.clear();
    ws.clear();
    double pw = 2.0 * half_width / panels;
    for (int p = 0; p < panels; ++p) {
        double a = -half_width + p * pw;
        for (int i = 0; i < nodes; ++i) {
            ts.push_back(a + 0.5 * pw * (x[i] + 1.0));
            ws.push_back(0.5 * pw * w[i]);
        }
    }
}

// Chunked parallel loop; results must be written to disjoint slots so the
// reduction stays deterministic.
template <class Body>
void parallel_for(int count, Body&& body) {
    unsigned hw = std::thread::hardware_concurrency();
    int nthreads = static_cast<int>(hw == 0 ? 1 : hw);
    if (nthreads <= 1 || count < 4) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    if (nthreads > count) nthreads = count;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (int i = t; i < count; i += nthreads) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace detail

struct QuadResult {
    cplx value;
    double error_estimate;
};

// Integral of f over [-T, T].  The value is the 2n-node pass; the estimate is
// the node-doubling difference.  A positive fail_tol turns the estimate into
// a hard failure threshold.
inline QuadResult quad_line(const std::function<cplx(double)>& f, double half_width,
                            int nodes, int panels, double fail_tol = 0.0) {
    if (!(half_width > 0.0) || nodes < 1 || panels < 1)
        throw std::invalid_argument("quad_line: bad quadrature parameters");
    auto pass = [&](int n) {
        std::vector<double> ts, ws;
        detail::composite_points(half_width, n, panels, ts, ws);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) acc += ws[i] * f(ts[i]);
        return acc;
    };
    cplx coarse = pass(nodes);
    cplx fine = pass(2 * nodes);
    double est = std::abs(fine - coarse) + 1e-16;
    if (fail_tol > 0.0 && est > fail_tol)
        throw QuadratureError("quad_line: error estimate " + std::to_string(est) +
                              " exceeds tolerance");
    return {fine, est};
}

// Tensor-product rule over [-T, T]^2; rows run in parallel.
inline QuadResult quad_plane(const std::function<cplx(double, double)>& f, double half_width,
                             int nodes, int panels, double fail_tol = 0.0) {
    if (!(half_width > 0.0) || nodes < 1 || panels < 1)
        throw std::invalid_argument("quad_plane: bad quadrature parameters");
    auto pass = [&](int n) {
        std::vector<double> ts, ws;
        detail::composite_points(half_width, n, panels, ts, ws);
        int count = static_cast<int>(ts.size());
        std::vector<cplx> rows(count, 0.0);
        detail::parallel_for(count, [&](int i) {
            cplx acc = 0.0;
            for (int j = 0; j < count; ++j) acc += ws[j] * f(ts[i], ts[j]);
            rows[i] = ws[i] * acc;
        });
        cplx total = 0.0;
        for (cplx r : rows) total += r;
        return total;
    };
    cplx coarse = pass(nodes);
    cplx fine = pass(2 * nodes);
    double est = std::abs(fine - coarse) + 1e-16;
    if (fail_tol > 0.0 && est > fail_tol)
        throw QuadratureError("quad_plane: error estimate " + std::to_string(est) +
                              " exceeds tolerance");
    return {fine, est};
}

} // namespace conspec
