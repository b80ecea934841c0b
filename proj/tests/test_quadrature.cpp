#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conspec/quadrature.hpp"

using namespace conspec;

TEST_CASE("gauss-legendre nodes: symmetry, weight sum, polynomial exactness") {
    for (int n : {2, 5, 16, 64}) {
        std::vector<double> x, w;
        gauss_legendre(n, x, w);
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            wsum += w[i];
            CHECK(x[i] == doctest::Approx(-x[n - 1 - i]).epsilon(1e-15));
            CHECK(w[i] == doctest::Approx(w[n - 1 - i]).epsilon(1e-15));
        }
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    }
    // n = 5 integrates t^8 over [-1, 1] exactly (degree <= 2n-1 = 9).
    std::vector<double> x, w;
    gauss_legendre(5, x, w);
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) acc += w[i] * std::pow(x[i], 8);
    CHECK(acc == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("quad_line: Gaussian closed forms") {
    auto gaussian = [](double t) { return cplx(std::exp(-t * t), 0.0); };
    auto r = quad_line(gaussian, 8.0, 64, 4);
    CHECK(std::abs(r.value - cplx(std::sqrt(kPi), 0.0)) < 1e-10);
    CHECK(r.error_estimate < 1e-10);

    auto odd = [](double t) { return cplx(t * std::exp(-t * t), 0.0); };
    CHECK(std::abs(quad_line(odd, 8.0, 64, 4).value) < 1e-15);
}

TEST_CASE("quad_plane: separable closed form with polynomial prefactor") {
    auto f = [](double a, double b) {
        return cplx((1.0 + a * a) * std::exp(-(a * a + b * b)), 0.0);
    };
    auto r = quad_plane(f, 8.0, 48, 2);
    // int (1+x^2) e^{-x^2} dx * int e^{-y^2} dy = (sqrt(pi) + sqrt(pi)/2) * sqrt(pi).
    double expected = 1.5 * kPi;
    CHECK(std::abs(r.value - cplx(expected, 0.0)) < 1e-9);
    CHECK(std::abs(r.value.imag()) == 0.0);
}

TEST_CASE("node-doubling changes the value by less than the reported estimate") {
    auto f = [](double t) { return cplx(std::cos(3.0 * t) * std::exp(-0.5 * t * t), 0.0); };
    auto coarse = quad_line(f, 9.0, 12, 2);
    auto fine = quad_line(f, 9.0, 24, 2);
    CHECK(std::abs(fine.value - coarse.value) < coarse.error_estimate);

    auto g = [](double a, double b) {
        return cplx(std::cos(2.0 * a - b) * std::exp(-0.4 * (a * a + b * b)), 0.0);
    };
    auto coarse2 = quad_plane(g, 9.0, 10, 2);
    auto fine2 = quad_plane(g, 9.0, 20, 2);
    CHECK(std::abs(fine2.value - coarse2.value) < coarse2.error_estimate);
}

TEST_CASE("tolerance failure raises") {
    auto rough = [](double t) { return cplx(std::cos(90.0 * t), 0.0); };
    CHECK_THROWS_AS(quad_line(rough, 5.0, 4, 1, 1e-12), QuadratureError);
    auto rough2 = [](double a, double b) { return cplx(std::cos(70.0 * a * b), 0.0); };
    CHECK_THROWS_AS(quad_plane(rough2, 5.0, 4, 1, 1e-12), QuadratureError);
}

TEST_CASE("parameter validation") {
    auto f = [](double) { return cplx(0.0, 0.0); };
    CHECK_THROWS_AS(quad_line(f, -1.0, 8, 1), std::invalid_argument);
    CHECK_THROWS_AS(quad_line(f, 1.0, 0, 1), std::invalid_argument);
    std::vector<double> x, w;
    CHECK_THROWS_AS(gauss_legendre(0, x, w), std::invalid_argument);
}
