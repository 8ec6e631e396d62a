#pragma once

#include <cmath>

namespace susd {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
inline Vec2 operator/(Vec2 v, double s) { return {v.x / s, v.y / s}; }
inline Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// 90-degree counterclockwise rotation: (x, y) -> (-y, x).
inline Vec2 rotate90(Vec2 v) { return {-v.y, v.x}; }

// Unit vector along v; returns (0, 0) if v is the zero vector.
inline Vec2 normalized(Vec2 v) {
    const double len = norm(v);
    if (len == 0.0) return {0.0, 0.0};
    return v / len;
}

inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// Symmetric 2x2 matrix [[c11, c12], [c12, c22]].
struct SymMat2 {
    double c11 = 0.0;
    double c12 = 0.0;
    double c22 = 0.0;
};

inline SymMat2 operator+(SymMat2 a, SymMat2 b) { return {a.c11 + b.c11, a.c12 + b.c12, a.c22 + b.c22}; }
inline SymMat2 operator-(SymMat2 a, SymMat2 b) { return {a.c11 - b.c11, a.c12 - b.c12, a.c22 - b.c22}; }
inline SymMat2 operator*(double s, SymMat2 m) { return {s * m.c11, s * m.c12, s * m.c22}; }

inline Vec2 mul(SymMat2 m, Vec2 v) {
    return {m.c11 * v.x + m.c12 * v.y, m.c12 * v.x + m.c22 * v.y};
}

inline double trace(SymMat2 m) { return m.c11 + m.c22; }

// a b^T + b a^T, the symmetric part builder used by covariance rate expressions.
inline SymMat2 sym_outer2(Vec2 a, Vec2 b) {
    return {2.0 * a.x * b.x, a.x * b.y + a.y * b.x, 2.0 * a.y * b.y};
}

inline SymMat2 outer(Vec2 a) { return {a.x * a.x, a.x * a.y, a.y * a.y}; }

// Largest absolute eigenvalue: |mean| + half-gap for a symmetric 2x2.
inline double spectral_norm(SymMat2 m) {
    const double mean = 0.5 * (m.c11 + m.c22);
    const double half_diff = 0.5 * (m.c11 - m.c22);
    const double disc = std::hypot(half_diff, m.c12);
    return std::abs(mean) + disc;
}

}  // namespace susd
