#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fsh4/jets.hpp"
#include "fsh4/taylor.hpp"
#include "fsh4/vec4.hpp"

namespace fsh4 {

/// Parameters of the closed-form solution family. (a, b) lies on the unit
/// circle; c0..c3 are the integration constants of the scalar field.
struct SolutionParams {
    double a = 1.0;
    double b = 0.0;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;

    SolutionParams(double a_, double b_, double c0_ = 0.0, double c1_ = 0.0,
                   double c2_ = 0.0, double c3_ = 0.0)
        : a(a_), b(b_), c0(c0_), c1(c1_), c2(c2_), c3(c3_) {
        if (std::abs(a * a + b * b - 1.0) > 1e-14)
            throw std::invalid_argument("SolutionParams: a^2 + b^2 must equal 1");
        if (std::abs(a) < 1e-12)
            throw std::invalid_argument("SolutionParams: a = 0 is degenerate (the sphere collapses)");
    }

    static SolutionParams from_angle(double alpha, double c0 = 0.0, double c1 = 0.0,
                                     double c2 = 0.0, double c3 = 0.0) {
        return {std::cos(alpha), std::sin(alpha), c0, c1, c2, c3};
    }
};

/// Spherical direction field in isothermal coordinates:
/// l(x, y) = (a cos y, a sin y, a sinh x, b cosh x) / cosh x.
template <class T>
Vec4T<T> sphere_isothermal(const SolutionParams& p, const T& x, const T& y) {
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    const T s = recip(cosh(x));
    return {p.a * cos(y) * s, p.a * sin(y) * s, p.a * sinh(x) * s, T(p.b)};
}

/// The same sphere in angular coordinates:
/// l(u, v) = (a cos u cos v, a cos u sin v, a sin u, b).
template <class T>
Vec4T<T> sphere_angular(const SolutionParams& p, const T& u, const T& v) {
    using std::cos;
    using std::sin;
    return {p.a * cos(u) * cos(v), p.a * cos(u) * sin(v), p.a * sin(u), T(p.b)};
}

/// Conformal substitution u(x) = -pi/2 + 2 atan(e^x); sin u = tanh x,
/// cos u = 1/cosh x.
template <class T>
T isothermal_parameter(const T& x) {
    using std::atan;
    using std::exp;
    return T(-std::numbers::pi / 2.0) + 2.0 * atan(exp(x));
}

/// General scalar solution of the reduced system:
/// r(x, y) = c0 + (c1 cos y + c2 sin y + c3 sinh x) / cosh x.
template <class T>
T scalar_solution(const SolutionParams& p, const T& x, const T& y) {
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    return T(p.c0) + (p.c1 * cos(y) + p.c2 * sin(y) + p.c3 * sinh(x)) * recip(cosh(x));
}

/// Ruling direction field:
/// n(x, y) = (b cos y, b sin y, b sinh x, -a cosh x) / cosh x.
template <class T>
Vec4T<T> ruling_normal(const SolutionParams& p, const T& x, const T& y) {
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    const T s = recip(cosh(x));
    return {p.b * cos(y) * s, p.b * sin(y) * s, p.b * sinh(x) * s, T(-p.a)};
}

/// Registered analytic families for jet evaluation by identifier.
enum class SurfaceFamily {
    kSphereIsothermal,
    kSphereAngular,
    kRulingNormal,
};

SurfaceFamily surface_family_from_string(const std::string& id);
std::string to_string(SurfaceFamily f);

/// Exact 2-jet of a registered family at (u, v).
Jet2Surface analytic_jet2(SurfaceFamily f, const SolutionParams& p, double u, double v);

/// Exact 2-jet of the scalar solution at (x, y).
ScalarJet2 scalar_analytic_jet2(const SolutionParams& p, double x, double y);

/// Hypersurface chart assembled from the bracket coordinate functions.
/// Requires b != 0 (the fourth coordinate divides by b).
Vec4 hypersurface_X_explicit(const SolutionParams& p, double x, double y, double w);

/// Hypersurface chart in ruled form X = f n + C with
/// f = (a/b) c0 + w - (b / (a cosh x)) (c1 cos y + c2 sin y + c3 sinh x)
/// and focal center C = (c1/a, c2/a, c3/a, c0/b). Requires b != 0.
Vec4 hypersurface_X_compact(const SolutionParams& p, double x, double y, double w);

/// The scalar factor f above; X = C exactly where it vanishes.
double compact_profile(const SolutionParams& p, double x, double y, double w);

/// Focal center C of the ruled form. Requires b != 0.
Vec4 compact_center(const SolutionParams& p);

}  // namespace fsh4
