#pragma once

// Complex special functions backing the scalar c-function model: gamma,
// Riemann zeta on vertical strips, the entire xi, and the rank-one scattering
// factor ctilde(s) = xihat(s)/xihat(1+s) where xihat is the completed zeta.
//
// Everything is a pure function of (argument, PrecisionConfig); nothing is
// cached or global.  Accuracy budget is ~1e-13 absolute inside the contract
// region |Re s| <= 3, |Im s| <= 100.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace conspec {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PrecisionConfig {
    double target_abs_error = 1e-13;
    int euler_maclaurin_cutoff = 32; // base N before the |Im s| ramp
    int correction_terms = 14;       // Euler-Maclaurin corrections, <= 14

    void validate() const {
        if (!(target_abs_error > 0.0)) throw std::invalid_argument("target_abs_error must be > 0");
        if (euler_maclaurin_cutoff < 10) throw std::invalid_argument("euler_maclaurin_cutoff must be >= 10");
        if (correction_terms < 1 || correction_terms > 14)
            throw std::invalid_argument("correction_terms must be in [1, 14]");
    }
};

namespace detail {

// B_{2k} / (2k)!  for k = 1..14.
inline constexpr double kBernOverFact[15] = {
    0.0,
    8.3333333333333333e-02,  // 1/12
    -1.3888888888888889e-03, // -1/720
    3.3068783068783069e-05,
    -8.2671957671957672e-07,
    2.0876756987868099e-08,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225833e-13,
    8.5860620562778446e-15,
    -2.1748686985580617e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.5347070396294675e-21,
    -8.9535174270375469e-23,
};

// B_{2k} / (2k (2k-1)) for k = 1..10 (Stirling series).
inline constexpr double kStirlingCoef[10] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// log Gamma on Re z >= 1/2 by shifting into Re >= 32 and applying the
// Stirling series.  The imaginary part may sit on a shifted branch; callers
// only exponentiate, so that is immaterial.
inline cplx log_gamma_right_half(cplx z) {
    cplx shift_sum = 0.0;
    while (z.real() < 32.0) {
        shift_sum += std::log(z);
        z += 1.0;
    }
    cplx w2 = 1.0 / (z * z);
    cplx series = 0.0;
    cplx p = 1.0 / z;
    for (int k = 0; k < 10; ++k) {
        series += kStirlingCoef[k] * p;
        p *= w2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series - shift_sum;
}

} // namespace detail

// Gamma function; reflection formula for Re s < 1/2.
inline cplx gamma(cplx s, const PrecisionConfig& cfg = {}) {
    cfg.validate();
    if (std::abs(s.imag()) < 1e-12) {
        double r = std::round(s.real());
        if (r <= 0.0 && std::abs(s.real() - r) < 1e-12)
            throw std::domain_error("gamma: pole at nonpositive integer");
    }
    if (s.real() < 0.5) {
        // Gamma(s) Gamma(1-s) = pi / sin(pi s)
        return kPi / (std::sin(kPi * s) * gamma(1.0 - s, cfg));
    }
    return std::exp(detail::log_gamma_right_half(s));
}

namespace detail {

// (s - 1) zeta(s) by Euler-Maclaurin; entire, valid on Re s >= -1/2 with the
// configured correction depth.  The cutoff ramps with |Im s| so the
// asymptotic tail stays convergent across the strip.
inline cplx zeta1_euler_maclaurin(cplx s, const PrecisionConfig& cfg) {
    const int n = std::max(cfg.euler_maclaurin_cutoff,
                           static_cast<int>(std::ceil(1.1 * std::abs(s.imag()))) + 16);
    const double nd = static_cast<double>(n);
    cplx partial = 0.0;
    for (int k = 1; k < n; ++k) partial += std::pow(static_cast<double>(k), -s);

    const cplx n_minus_s = std::pow(nd, -s);
    cplx tail = 0.5 * n_minus_s; // N^{-s}/2
    cplx poch = s;               // (s)(s+1)...(s+2k-2)
    cplx scale = n_minus_s / nd; // N^{-s-2k+1}
    for (int k = 1; k <= cfg.correction_terms; ++k) {
        tail += kBernOverFact[k] * poch * scale;
        poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        scale /= nd * nd;
    }
    return (s - 1.0) * (partial + tail) + std::pow(nd, 1.0 - s);
}

} // namespace detail

inline cplx zeta(cplx s, const PrecisionConfig& cfg = {});

// (s - 1) zeta(s): entire, no pole at s = 1.
inline cplx zeta_times_s_minus_1(cplx s, const PrecisionConfig& cfg = {}) {
    cfg.validate();
    if (s.real() >= -0.5) return detail::zeta1_euler_maclaurin(s, cfg);
    return (s - 1.0) * zeta(s, cfg);
}

// Riemann zeta; Euler-Maclaurin for Re s >= 0, functional-equation reflection
// zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s) for Re s < 0.
inline cplx zeta(cplx s, const PrecisionConfig& cfg) {
    cfg.validate();
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12) throw std::domain_error("zeta: pole at s = 1");
    if (s.real() < 0.0) {
        cplx t = 1.0 - s;
        return std::pow(cplx(2.0), s) * std::pow(cplx(kPi), s - 1.0) * std::sin(kPi * s / 2.0) *
               gamma(t, cfg) * zeta(t, cfg);
    }
    return detail::zeta1_euler_maclaurin(s, cfg) / (s - 1.0);
}

// The entire xi function (1/2) s (s-1) pi^{-s/2} Gamma(s/2) zeta(s), computed
// in the everywhere-regular form pi^{-s/2} Gamma(s/2 + 1) [(s-1) zeta(s)];
// xi(0) = xi(1) = 1/2 come out of the same branch.  Left of Re s = -1 the
// functional equation xi(s) = xi(1-s) routes back into the regular strip.
inline cplx xi_entire(cplx s, const PrecisionConfig& cfg = {}) {
    cfg.validate();
    if (s.real() < -1.0) s = 1.0 - s;
    return std::exp(-0.5 * s * std::log(cplx(kPi))) * gamma(0.5 * s + 1.0, cfg) *
           zeta_times_s_minus_1(s, cfg);
}

// Rank-one scattering factor xihat(s)/xihat(1+s) with xihat the completed
// zeta pi^{-s/2} Gamma(s/2) zeta(s).  Written through the entire xi so the
// xihat poles at 0 and 1 cancel analytically:
//
//   ctilde(s) = xi(s) (s+1) / (xi(s+1) (s-1)),
//
// finite on Re s = 0 with ctilde(0) = -1.
inline cplx ctilde(cplx s, const PrecisionConfig& cfg = {}) {
    cplx den = xi_entire(s + 1.0, cfg) * (s - 1.0);
    if (std::abs(den) < 1e-300) throw std::domain_error("ctilde: denominator vanishes");
    return xi_entire(s, cfg) * (s + 1.0) / den;
}

} // namespace conspec
