#pragma once

// The spectral symbol h(Lambda): the rapidly decaying scalar standing in for
// the trace of the induced representation as a function of the spectral
// parameter.  One family is provided:
//
//     h(i y) = p(u) exp(-b |y|^2),   u = sum of the coordinates of y,
//
// with p a real polynomial and b > 0.  On a one-dimensional spectral line
// y = (t, 0) this reduces to p(t) exp(-b t^2).

#include <stdexcept>
#include <vector>

#include "conspec/geometry.hpp"

namespace conspec {

struct SpectralSymbol {
    enum class Family { gaussian_poly };

    Family family = Family::gaussian_poly;
    std::vector<double> poly{1.0}; // coefficients, ascending degree
    double width = 1.0;            // b

    void validate() const {
        if (!(width > 0.0)) throw std::invalid_argument("SpectralSymbol: width must be > 0");
        if (poly.empty()) throw std::invalid_argument("SpectralSymbol: empty polynomial");
    }

    double poly_at(double u) const {
        double acc = 0.0;
        for (std::size_t i = poly.size(); i-- > 0;) acc = acc * u + poly[i];
        return acc;
    }

    // h on a 1-dimensional spectral line, coordinate t.
    double eval1(double t) const { return poly_at(t) * std::exp(-width * t * t); }

    // h on the spectral plane, Lambda = i y.
    double eval2(Vec2 y) const { return poly_at(y.x + y.y) * std::exp(-width * norm2(y)); }
};

} // namespace conspec
