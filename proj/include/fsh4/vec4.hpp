#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace fsh4 {

/// 4-vector over an arbitrary scalar ring T (double for plain evaluation,
/// TaylorVar<N> for jet evaluation).
template <class T>
struct Vec4T {
    std::array<T, 4> c{};

    Vec4T() = default;
    Vec4T(T a, T b, T d, T e) : c{std::move(a), std::move(b), std::move(d), std::move(e)} {}

    T& operator[](std::size_t i) { return c[i]; }
    const T& operator[](std::size_t i) const { return c[i]; }

    Vec4T& operator+=(const Vec4T& o) {
        for (std::size_t i = 0; i < 4; ++i) c[i] = c[i] + o.c[i];
        return *this;
    }
    Vec4T& operator-=(const Vec4T& o) {
        for (std::size_t i = 0; i < 4; ++i) c[i] = c[i] - o.c[i];
        return *this;
    }

    friend Vec4T operator+(Vec4T a, const Vec4T& b) { return a += b; }
    friend Vec4T operator-(Vec4T a, const Vec4T& b) { return a -= b; }
    friend Vec4T operator*(const T& s, const Vec4T& v) {
        return {s * v.c[0], s * v.c[1], s * v.c[2], s * v.c[3]};
    }
    friend Vec4T operator*(const Vec4T& v, const T& s) { return s * v; }
    friend Vec4T operator-(const Vec4T& v) {
        return {-v.c[0], -v.c[1], -v.c[2], -v.c[3]};
    }
};

using Vec4 = Vec4T<double>;

template <class T>
T dot(const Vec4T<T>& a, const Vec4T<T>& b) {
    return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2] + a.c[3] * b.c[3];
}

inline double norm(const Vec4& v) { return std::sqrt(dot(v, v)); }

inline double max_abs(const Vec4& v) {
    double m = 0.0;
    for (double x : v.c) m = std::max(m, std::abs(x));
    return m;
}

namespace detail {

template <class T>
T det3(T a00, T a01, T a02, T a10, T a11, T a12, T a20, T a21, T a22) {
    return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
           a02 * (a10 * a21 - a11 * a20);
}

}  // namespace detail

/// Generalized cross product: the unique vector with det[p; q; r; cross4(p,q,r)] >= 0,
/// orthogonal to p, q, r. Component i is the signed cofactor of the last row.
template <class T>
Vec4T<T> cross4(const Vec4T<T>& p, const Vec4T<T>& q, const Vec4T<T>& r) {
    using detail::det3;
    Vec4T<T> n;
    n[0] = -det3(p[1], p[2], p[3], q[1], q[2], q[3], r[1], r[2], r[3]);
    n[1] = det3(p[0], p[2], p[3], q[0], q[2], q[3], r[0], r[2], r[3]);
    n[2] = -det3(p[0], p[1], p[3], q[0], q[1], q[3], r[0], r[1], r[3]);
    n[3] = det3(p[0], p[1], p[2], q[0], q[1], q[2], r[0], r[1], r[2]);
    return n;
}

}  // namespace fsh4
