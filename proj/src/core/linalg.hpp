#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace np3 {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Complex = std::complex<double>;
using CVec3 = std::array<Complex, 3>;

// Rank-3 and rank-4 arrays of doubles: Gamma[k][i][j], Riem[i][j][k][l].
using Arr3 = std::array<Mat3, 3>;
using Arr4 = std::array<Arr3, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
    return {s * a[0], s * a[1], s * a[2]};
}
inline Vec3& operator+=(Vec3& a, const Vec3& b) {
    a[0] += b[0]; a[1] += b[1]; a[2] += b[2];
    return a;
}

inline CVec3 operator+(const CVec3& a, const CVec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline CVec3 operator-(const CVec3& a, const CVec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline CVec3 operator*(Complex s, const CVec3& a) {
    return {s * a[0], s * a[1], s * a[2]};
}

inline CVec3 to_complex(const Vec3& a) {
    return {Complex(a[0]), Complex(a[1]), Complex(a[2])};
}
inline CVec3 conj(const CVec3& a) {
    return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])};
}

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// g-inner product of real vectors.
inline double inner(const Mat3& g, const Vec3& a, const Vec3& b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += g[i][j] * a[i] * b[j];
    return s;
}

// Complex-BILINEAR extension of the metric (no conjugation on either slot).
inline Complex inner_c(const Mat3& g, const CVec3& a, const CVec3& b) {
    Complex s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += g[i][j] * a[i] * b[j];
    return s;
}

inline double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Mat3 inverse3(const Mat3& m, double det) {
    Mat3 inv;
    inv[0][0] =  (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    inv[0][1] = -(m[0][1] * m[2][2] - m[0][2] * m[2][1]) / det;
    inv[0][2] =  (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    inv[1][0] = -(m[1][0] * m[2][2] - m[1][2] * m[2][0]) / det;
    inv[1][1] =  (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    inv[1][2] = -(m[0][0] * m[1][2] - m[0][2] * m[1][0]) / det;
    inv[2][0] =  (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    inv[2][1] = -(m[0][0] * m[2][1] - m[0][1] * m[2][0]) / det;
    inv[2][2] =  (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return inv;
}

inline Mat3 matmul(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            c[i][j] = s;
        }
    return c;
}

// Eigenvalues of a symmetric 3x3 matrix (ascending), via the trigonometric
// solution of the characteristic cubic.
inline std::array<double, 3> sym_eigenvalues(const Mat3& a) {
    const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    const double q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    if (p1 == 0.0) {
        std::array<double, 3> ev = {a[0][0], a[1][1], a[2][2]};
        if (ev[0] > ev[1]) std::swap(ev[0], ev[1]);
        if (ev[1] > ev[2]) std::swap(ev[1], ev[2]);
        if (ev[0] > ev[1]) std::swap(ev[0], ev[1]);
        return ev;
    }
    const double p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q)
                    + (a[2][2] - q) * (a[2][2] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat3 b{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
    double r = det3(b) / 2.0;
    r = std::max(-1.0, std::min(1.0, r));
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    return {e3, e2, e1};
}

inline double norm_inf(const Vec3& a) {
    return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}
inline double norm_inf_c(const CVec3& a) {
    return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

}  // namespace np3
