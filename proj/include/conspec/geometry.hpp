#pragma once

// Small fixed-size Euclidean primitives for the rank <= 2 root geometry.
// Everything is a plain value type; the standard dot product is the inner
// product throughout.

#include <array>
#include <cmath>
#include <stdexcept>

namespace conspec {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return s * a; }
    friend Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }

inline Vec2 unit(Vec2 a) {
    double n = norm(a);
    if (n == 0.0) throw std::domain_error("unit(): zero vector");
    return a / n;
}

// Counterclockwise quarter turn.  Used as the canonical orientation of the
// line orthogonal to a given direction (mirror lines, kernel lines).
inline Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }

inline bool approx_eq(Vec2 a, Vec2 b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

// Angle between two nonzero vectors, in [0, pi].  atan2 of the cross/dot
// pair stays accurate where acos of the normalized dot product loses half
// the digits (vectors nearly parallel or antiparallel).
inline double angle_between(Vec2 a, Vec2 b) {
    double cross = a.x * b.y - a.y * b.x;
    return std::atan2(std::abs(cross), dot(a, b));
}

struct Mat2 {
    // Row-major 2x2.
    double m[2][2] = {{1.0, 0.0}, {0.0, 1.0}};

    static Mat2 identity() { return {}; }

    Vec2 apply(Vec2 v) const {
        return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
    }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
        return r;
    }

    Mat2 transpose() const {
        Mat2 r;
        r.m[0][0] = m[0][0]; r.m[0][1] = m[1][0];
        r.m[1][0] = m[0][1]; r.m[1][1] = m[1][1];
        return r;
    }

    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

// I - 2 a a^T / (a, a): the orthogonal reflection negating `a`.
inline Mat2 reflection_in(Vec2 a) {
    double n2 = norm2(a);
    if (n2 == 0.0) throw std::domain_error("reflection_in(): zero vector");
    Mat2 r;
    r.m[0][0] = 1.0 - 2.0 * a.x * a.x / n2;
    r.m[0][1] = -2.0 * a.x * a.y / n2;
    r.m[1][0] = -2.0 * a.y * a.x / n2;
    r.m[1][1] = 1.0 - 2.0 * a.y * a.y / n2;
    return r;
}

// 1 - w for a Weyl matrix w.
inline Mat2 one_minus(const Mat2& w) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = (i == j ? 1.0 : 0.0) - w.m[i][j];
    return r;
}

// Solve the 2x2 system A x = b (A given by columns c0, c1).
inline Vec2 solve2(Vec2 c0, Vec2 c1, Vec2 b) {
    double d = c0.x * c1.y - c1.x * c0.y;
    if (std::abs(d) < 1e-14) throw std::domain_error("solve2(): singular system");
    return {(b.x * c1.y - c1.x * b.y) / d, (c0.x * b.y - b.x * c0.y) / d};
}

} // namespace conspec
