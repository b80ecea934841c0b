#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conspec/special_functions.hpp"
#include "oracles.hpp"
#include "reference_values.hpp"

using namespace conspec;

static double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

TEST_CASE("gamma: classical values and frozen references") {
    CHECK(std::abs(gamma({1.0, 0.0}) - cplx(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(gamma({0.5, 0.0}) - cplx(std::sqrt(kPi), 0.0)) < 1e-12);
    CHECK(std::abs(gamma({5.0, 0.0}) - cplx(24.0, 0.0)) < 1e-11);

    CHECK(rel_err(gamma({2.5, 3.0}), refvals::kGamma_2p5_3i) < 1e-12);
    CHECK(rel_err(gamma({-1.5, 0.5}), refvals::kGamma_m1p5_0p5i) < 1e-12);
    CHECK(rel_err(gamma({1.0, 50.0}), refvals::kGamma_1_50i) < 1e-12);
    CHECK(rel_err(gamma({0.1, 0.9}), refvals::kGamma_0p1_0p9i) < 1e-12);
    CHECK(rel_err(gamma({-2.5, -40.0}), refvals::kGamma_m2p5_m40i) < 1e-12);
    CHECK(rel_err(gamma({3.0, 90.0}), refvals::kGamma_3_90i) < 1e-12);
}

TEST_CASE("gamma: identities on random points in the contract region") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> re(-2.5, 3.0), im(-90.0, 90.0);
    for (int i = 0; i < 40; ++i) {
        cplx s{re(rng), im(rng)};
        if (std::abs(s.imag()) < 0.3) s += cplx(0.0, 0.5);
        // Recurrence.
        CHECK(rel_err(gamma(s + 1.0), s * gamma(s)) < 1e-11);
        // Conjugation symmetry.
        CHECK(rel_err(gamma(std::conj(s)), std::conj(gamma(s))) < 1e-12);
    }
    // Duplication at a fixed point.
    cplx s{0.7, 2.3};
    cplx lhs = gamma(2.0 * s);
    cplx rhs = std::pow(2.0, 2.0 * s - 1.0) / std::sqrt(kPi) * gamma(s) * gamma(s + 0.5);
    CHECK(rel_err(lhs, rhs) < 1e-12);
}

TEST_CASE("gamma: poles rejected") {
    CHECK_THROWS_AS(gamma({0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(gamma({-3.0, 0.0}), std::domain_error);
    CHECK_NOTHROW(gamma({-3.0, 0.5}));
}

TEST_CASE("zeta: known values and direct-series oracle") {
    CHECK(std::abs(zeta({2.0, 0.0}) - cplx(kPi * kPi / 6.0, 0.0)) < 1e-12);
    CHECK(std::abs(zeta({0.0, 0.0}) - cplx(-0.5, 0.0)) < 1e-13);
    CHECK(std::abs(zeta({3.0, 0.0}) - refvals::kZeta_3) < 1e-12);
    CHECK(std::abs(zeta({3.0, 0.0}) - oracles::zeta_direct_series({3.0, 0.0})) < 1e-12);
    CHECK(std::abs(zeta({-0.5, 0.0}) - refvals::kZeta_m0p5) < 1e-12);

    // Agreement with the direct series across Re s >= 2.
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> re(2.0, 3.0), im(-40.0, 40.0);
    for (int i = 0; i < 10; ++i) {
        cplx s{re(rng), im(rng)};
        CHECK(std::abs(zeta(s) - oracles::zeta_direct_series(s)) < 1e-12);
    }
}

TEST_CASE("zeta: frozen references across the strip") {
    CHECK(std::abs(zeta({0.5, 14.134725}) - refvals::kZeta_0p5_14i) < 1e-12);
    CHECK(std::abs(zeta({1.5, 20.0}) - refvals::kZeta_1p5_20i) < 1e-12);
    CHECK(std::abs(zeta({-1.0, 10.0}) - refvals::kZeta_m1_10i) < 1e-12);
    CHECK(std::abs(zeta({2.0, 75.0}) - refvals::kZeta_2_75i) < 1e-12);
    CHECK(std::abs(zeta({3.0, 100.0}) - refvals::kZeta_3_100i) < 1e-12);
    CHECK(std::abs(zeta({-0.7, 33.0}) - refvals::kZeta_m0p7_33i) < 1e-12);
}

TEST_CASE("zeta: pole rejected, cutoff configurable") {
    CHECK_THROWS_AS(zeta({1.0, 0.0}), std::domain_error);
    PrecisionConfig loose;
    loose.euler_maclaurin_cutoff = 10;
    loose.correction_terms = 14;
    CHECK(std::abs(zeta({2.0, 0.0}, loose) - cplx(kPi * kPi / 6.0, 0.0)) < 1e-12);
    PrecisionConfig bad;
    bad.euler_maclaurin_cutoff = 5;
    CHECK_THROWS_AS(zeta({2.0, 0.0}, bad), std::invalid_argument);
    bad = PrecisionConfig{};
    bad.target_abs_error = 0.0;
    CHECK_THROWS_AS(zeta({2.0, 0.0}, bad), std::invalid_argument);
}

TEST_CASE("xi: special values and frozen references") {
    // xi(0) = 1/2 through the analytic cancellation Gamma(s/2+1) (s-1) zeta(s).
    CHECK(std::abs(xi_entire({0.0, 0.0}) - cplx(0.5, 0.0)) < 1e-13);
    CHECK(std::abs(xi_entire({1.0, 0.0}) - cplx(0.5, 0.0)) < 1e-13);
    CHECK(std::abs(xi_entire({0.5, 0.0}) - refvals::kXi_0p5) < 1e-13);
    CHECK(std::abs(xi_entire({0.3, 7.0}) - refvals::kXi_0p3_7i) < 1e-12);
    CHECK(std::abs(xi_entire({0.5, 5.0}) - refvals::kXi_0p5_5i) < 1e-12);
    CHECK(std::abs(xi_entire({-0.4, 2.2}) - refvals::kXi_m0p4_2p2i) < 1e-12);
    CHECK(std::abs(xi_entire({1.7, -3.3}) - refvals::kXi_1p7_m3p3i) < 1e-12);
    CHECK(std::abs(xi_entire({2.0, 25.0}) - refvals::kXi_2_25i) < 1e-12);

    // Near-zero continuity: the regular branch agrees with nearby values.
    CHECK(std::abs(xi_entire({1e-7, 0.0}) - cplx(0.5, 0.0)) < 1e-6);
    CHECK(std::abs(xi_entire({1.0 + 1e-7, 0.0}) - cplx(0.5, 0.0)) < 1e-6);
}

TEST_CASE("xi: functional equation on 50 random strip points") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> re(-1.0, 2.0), im(-30.0, 30.0);
    for (int i = 0; i < 50; ++i) {
        cplx s{re(rng), im(rng)};
        CHECK(std::abs(xi_entire(s) - xi_entire(1.0 - s)) < 1e-10);
    }
    CHECK(std::abs(xi_entire({0.3, 7.0}) - xi_entire({0.7, -7.0})) < 1e-10);
}

TEST_CASE("ctilde: limit value at 0 against the raw completed-zeta oracle") {
    // Raw ratio pi^{-s/2} Gamma(s/2) zeta(s) / (pi^{-(1+s)/2} Gamma((1+s)/2)
    // zeta(1+s)) along real eps -> 0, Richardson-extrapolated.
    auto xihat = [](cplx s) {
        return std::exp(-0.5 * s * std::log(cplx(kPi))) * gamma(0.5 * s) * zeta(s);
    };
    double e = 1e-3;
    cplx r1 = xihat({e, 0.0}) / xihat({1.0 + e, 0.0});
    cplx r2 = xihat({e / 2.0, 0.0}) / xihat({1.0 + e / 2.0, 0.0});
    cplx limit = 2.0 * r2 - r1;
    CHECK(std::abs(limit - cplx(-1.0, 0.0)) < 1e-5);
    CHECK(std::abs(ctilde({0.0, 0.0}) - cplx(-1.0, 0.0)) < 1e-10);
    CHECK(std::abs(ctilde({0.0, 0.0}) - limit) < 1e-5);
}

TEST_CASE("ctilde: frozen references and axis properties") {
    CHECK(std::abs(ctilde({0.0, 2.0}) - refvals::kCtilde_2i) < 1e-12);
    CHECK(std::abs(ctilde({0.0, 0.5}) - refvals::kCtilde_0p5i) < 1e-12);
    CHECK(std::abs(ctilde({0.0, 20.0}) - refvals::kCtilde_20i) < 1e-12);

    for (double t : {0.5, 1.0, 5.0, 20.0})
        CHECK(std::abs(std::abs(ctilde({0.0, t})) - 1.0) < 1e-10);

    // ctilde(s) ctilde(-s) = 1.
    cplx s{0.0, 2.3};
    CHECK(std::abs(ctilde(s) * ctilde(-s) - cplx(1.0, 0.0)) < 1e-10);

    // Real-on-real-axis analyticity: conj(ctilde(it)) = ctilde(-it).
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> td(-25.0, 25.0);
    for (int i = 0; i < 30; ++i) {
        double t = td(rng);
        cplx a = ctilde({0.0, t});
        cplx b = ctilde({0.0, -t});
        CHECK(std::abs(std::conj(a) - b) < 1e-10);
        CHECK(std::abs(a * b - cplx(1.0, 0.0)) < 1e-10);
        CHECK(std::abs(std::abs(a) - 1.0) < 1e-10);
    }
}
