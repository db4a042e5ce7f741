#pragma once

#include <array>
#include <cmath>

namespace fsh4 {

namespace detail {

constexpr double kBinom[4][4] = {
    {1, 0, 0, 0},
    {1, 1, 0, 0},
    {1, 2, 1, 0},
    {1, 3, 3, 1},
};

constexpr double kFactorial[4] = {1, 1, 2, 6};

}  // namespace detail

/// Truncated bivariate Taylor scalar. Tracks every partial derivative of a
/// function of (u, v) up to total order N; slot (i, j) holds d^{i+j}f/du^i dv^j
/// as a raw derivative value. Products use Leibniz with binomial weights, so
/// arithmetic on TaylorVars propagates exact jets (no truncation error below
/// order N). N <= 3 is supported.
template <int N>
class TaylorVar {
    static_assert(N >= 1 && N <= 3, "supported jet orders are 1..3");

public:
    static constexpr int kSlots = (N + 1) * (N + 2) / 2;

    TaylorVar() = default;
    TaylorVar(double value) { d_[0] = value; }  // NOLINT: implicit by design

    static constexpr int index(int i, int j) {
        const int t = i + j;
        return t * (t + 1) / 2 + j;
    }

    /// Independent variable u at the given base value: derivative du = 1.
    static TaylorVar seed_u(double value) {
        TaylorVar t(value);
        t.d_[index(1, 0)] = 1.0;
        return t;
    }

    /// Independent variable v: derivative dv = 1.
    static TaylorVar seed_v(double value) {
        TaylorVar t(value);
        t.d_[index(0, 1)] = 1.0;
        return t;
    }

    double deriv(int i, int j) const { return d_[index(i, j)]; }
    double& slot(int i, int j) { return d_[index(i, j)]; }
    double value() const { return d_[0]; }

    TaylorVar operator-() const {
        TaylorVar r;
        for (int k = 0; k < kSlots; ++k) r.d_[k] = -d_[k];
        return r;
    }

    TaylorVar& operator+=(const TaylorVar& o) {
        for (int k = 0; k < kSlots; ++k) d_[k] += o.d_[k];
        return *this;
    }
    TaylorVar& operator-=(const TaylorVar& o) {
        for (int k = 0; k < kSlots; ++k) d_[k] -= o.d_[k];
        return *this;
    }

    friend TaylorVar operator+(TaylorVar a, const TaylorVar& b) { return a += b; }
    friend TaylorVar operator-(TaylorVar a, const TaylorVar& b) { return a -= b; }

    friend TaylorVar operator*(const TaylorVar& a, const TaylorVar& b) {
        TaylorVar r;
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j) {
                double s = 0.0;
                for (int p = 0; p <= i; ++p)
                    for (int q = 0; q <= j; ++q)
                        s += detail::kBinom[i][p] * detail::kBinom[j][q] *
                             a.d_[index(p, q)] * b.d_[index(i - p, j - q)];
                r.d_[index(i, j)] = s;
            }
        return r;
    }

    friend TaylorVar operator*(double s, TaylorVar a) {
        for (int k = 0; k < kSlots; ++k) a.d_[k] *= s;
        return a;
    }
    friend TaylorVar operator*(const TaylorVar& a, double s) { return s * a; }
    friend TaylorVar operator/(const TaylorVar& a, const TaylorVar& b) { return a * recip(b); }
    friend TaylorVar operator/(const TaylorVar& a, double s) { return (1.0 / s) * a; }

    /// Composition with a univariate function given its derivatives
    /// f, f', ..., f^(N) at this->value(). Horner evaluation of the truncated
    /// series in the nilpotent part.
    TaylorVar apply(const std::array<double, N + 1>& f) const {
        TaylorVar delta = *this;
        delta.d_[0] = 0.0;
        TaylorVar acc(f[N] / detail::kFactorial[N]);
        for (int k = N - 1; k >= 0; --k) acc = acc * delta + TaylorVar(f[k] / detail::kFactorial[k]);
        return acc;
    }

    friend TaylorVar sin(const TaylorVar& x) {
        const double s = std::sin(x.value()), c = std::cos(x.value());
        return x.apply(make_table(s, c, -s, -c));
    }
    friend TaylorVar cos(const TaylorVar& x) {
        const double s = std::sin(x.value()), c = std::cos(x.value());
        return x.apply(make_table(c, -s, -c, s));
    }
    friend TaylorVar sinh(const TaylorVar& x) {
        const double s = std::sinh(x.value()), c = std::cosh(x.value());
        return x.apply(make_table(s, c, s, c));
    }
    friend TaylorVar cosh(const TaylorVar& x) {
        const double s = std::sinh(x.value()), c = std::cosh(x.value());
        return x.apply(make_table(c, s, c, s));
    }
    friend TaylorVar exp(const TaylorVar& x) {
        const double e = std::exp(x.value());
        return x.apply(make_table(e, e, e, e));
    }
    friend TaylorVar log(const TaylorVar& x) {
        const double t = x.value();
        return x.apply(make_table(std::log(t), 1.0 / t, -1.0 / (t * t), 2.0 / (t * t * t)));
    }
    friend TaylorVar sqrt(const TaylorVar& x) {
        const double s = std::sqrt(x.value());
        return x.apply(make_table(s, 0.5 / s, -0.25 / (s * s * s), 0.375 / (s * s * s * s * s)));
    }
    friend TaylorVar recip(const TaylorVar& x) {
        const double t = x.value();
        return x.apply(make_table(1.0 / t, -1.0 / (t * t), 2.0 / (t * t * t), -6.0 / (t * t * t * t)));
    }
    friend TaylorVar atan(const TaylorVar& x) {
        const double t = x.value();
        const double w = 1.0 + t * t;
        return x.apply(make_table(std::atan(t), 1.0 / w, -2.0 * t / (w * w),
                                  (6.0 * t * t - 2.0) / (w * w * w)));
    }

    /// Jet of the partial derivative in u, one order lower.
    TaylorVar<N - 1> derive_u() const {
        TaylorVar<N - 1> r;
        for (int i = 0; i <= N - 1; ++i)
            for (int j = 0; i + j <= N - 1; ++j)
                r.slot(i, j) = d_[index(i + 1, j)];
        return r;
    }
    TaylorVar<N - 1> derive_v() const {
        TaylorVar<N - 1> r;
        for (int i = 0; i <= N - 1; ++i)
            for (int j = 0; i + j <= N - 1; ++j)
                r.slot(i, j) = d_[index(i, j + 1)];
        return r;
    }

    /// Truncation to a lower order M <= N.
    template <int M>
    TaylorVar<M> truncate() const {
        static_assert(M <= N);
        TaylorVar<M> r;
        for (int i = 0; i <= M; ++i)
            for (int j = 0; i + j <= M; ++j) r.slot(i, j) = d_[index(i, j)];
        return r;
    }

private:
    static std::array<double, N + 1> make_table(double f0, double f1, double f2, double f3) {
        std::array<double, N + 1> t{};
        const double all[4] = {f0, f1, f2, f3};
        for (int k = 0; k <= N; ++k) t[k] = all[k];
        return t;
    }

    std::array<double, kSlots> d_{};
};

// Plain-double counterparts so family evaluators template cleanly over both.
inline double recip(double x) { return 1.0 / x; }

using Tv1 = TaylorVar<1>;
using Tv2 = TaylorVar<2>;
using Tv3 = TaylorVar<3>;

}  // namespace fsh4
