#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "fsh4/closed_forms.hpp"
#include "fsh4/envelope.hpp"
#include "fsh4/rng.hpp"

using namespace fsh4;

TEST_CASE("parameter validation enforces the unit circle and a != 0") {
    CHECK_NOTHROW(SolutionParams(0.6, 0.8));
    CHECK_NOTHROW(SolutionParams(1.0, 0.0));
    CHECK_NOTHROW(SolutionParams(-0.6, 0.8, 1, 2, 3, 4));
    CHECK_THROWS_AS(SolutionParams(0.6, 0.81), std::invalid_argument);
    CHECK_THROWS_AS(SolutionParams(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SolutionParams(0.0, 1.0), std::invalid_argument);

    const SolutionParams p = SolutionParams::from_angle(0.93, 1.5, -2.0, 0.5, 3.0);
    CHECK(p.a == doctest::Approx(std::cos(0.93)));
    CHECK(p.b == doctest::Approx(std::sin(0.93)));
    CHECK(p.c1 == -2.0);
}

TEST_CASE("direction field is unit length for every admissible parameter") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const SolutionParams p = SolutionParams::from_angle(rng.uniform(-1.4, 1.4));
        const double x = rng.uniform(-3, 3), y = rng.uniform(-6, 6);
        const Vec4 l = sphere_isothermal(p, x, y);
        CHECK(dot(l, l) == doctest::Approx(1.0).epsilon(1e-14));
        const Vec4 n = ruling_normal(p, x, y);
        CHECK(dot(n, n) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(dot(l, n)) < 1e-14);
    }
}

TEST_CASE("conformal substitution identifies the two sphere charts") {
    const SolutionParams p(0.28, -0.96, 0, 0, 0, 0);
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const double x = rng.uniform(-2.5, 2.5), y = rng.uniform(-6, 6);
        const double u = isothermal_parameter(x);
        CHECK(u > -std::numbers::pi / 2);
        CHECK(u < std::numbers::pi / 2);
        CHECK(std::sin(u) == doctest::Approx(std::tanh(x)).epsilon(1e-14));
        CHECK(std::cos(u) == doctest::Approx(1.0 / std::cosh(x)).epsilon(1e-14));
        const Vec4 iso = sphere_isothermal(p, x, y);
        const Vec4 ang = sphere_angular(p, u, y);
        CHECK(max_abs(iso - ang) < 1e-14);
    }
    // and the substitution is conformal: du/dx = sech x
    const Tv1 u = isothermal_parameter(Tv1::seed_u(0.85));
    CHECK(u.deriv(1, 0) == doctest::Approx(1.0 / std::cosh(0.85)).epsilon(1e-14));
}

TEST_CASE("ruling normal is the positively oriented fourth frame vector") {
    const SolutionParams p(-0.8, 0.6, 2, 1, 0, -1);
    const double x = 0.6, y = -2.1;
    const Jet2Surface j = analytic_jet2(SurfaceFamily::kSphereIsothermal, p, x, y);
    const Vec4 n = fourth_frame_vector(j.value, j.d_u, j.d_v);
    const Vec4 n_closed = ruling_normal(p, x, y);
    CHECK(max_abs(n - n_closed) < 1e-14);
}

TEST_CASE("analytic jets agree with independently seeded Taylor evaluation") {
    const SolutionParams p(0.6, 0.8, 1, 1, 1, 1);
    const double x = -0.35, y = 1.7;

    const Jet2Surface j = analytic_jet2(SurfaceFamily::kSphereIsothermal, p, x, y);
    const Jet2Surface j2 = jet2_of(
        [&](auto u, auto v) { return sphere_isothermal(p, u, v); }, x, y);
    CHECK(max_abs(j.value - j2.value) == 0.0);
    CHECK(max_abs(j.d_uu - j2.d_uu) == 0.0);
    CHECK(max_abs(j.d_uv - j2.d_uv) == 0.0);

    const ScalarJet2 s = scalar_analytic_jet2(p, x, y);
    const ScalarJet2 s2 = scalar_jet2_of(
        [&](auto u, auto v) { return scalar_solution(p, u, v); }, x, y);
    CHECK(s.value == s2.value);
    CHECK(s.d_u == s2.d_u);
    CHECK(s.d_vv == s2.d_vv);
}

TEST_CASE("scalar solution evaluates the four-term family") {
    // spot value against a by-hand evaluation
    const SolutionParams p(0.6, 0.8, 0.5, 2.0, -1.0, 0.25);
    const double x = 0.4, y = -1.1;
    const double expected =
        0.5 + (2.0 * std::cos(-1.1) - std::sin(-1.1) + 0.25 * std::sinh(0.4)) / std::cosh(0.4);
    CHECK(scalar_solution(p, x, y) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("family registry round-trips identifiers") {
    for (const auto f : {SurfaceFamily::kSphereIsothermal, SurfaceFamily::kSphereAngular,
                         SurfaceFamily::kRulingNormal})
        CHECK(surface_family_from_string(to_string(f)) == f);
    CHECK_THROWS_AS(surface_family_from_string("NoSuchFamily"), std::invalid_argument);
}

TEST_CASE("explicit and ruled charts coincide where both are defined") {
    const SolutionParams p(0.6, 0.8, 1.2, -0.7, 0.4, 2.0);
    Rng rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const double x = rng.uniform(-1.5, 1.5);
        const double y = rng.uniform(-3, 3);
        const double w = rng.uniform(-2, 2);
        const Vec4 xe = hypersurface_X_explicit(p, x, y, w);
        const Vec4 xc = hypersurface_X_compact(p, x, y, w);
        CHECK(max_abs(xe - xc) < 1e-12);
    }
}

TEST_CASE("ruled chart decomposes as profile times ruling plus a fixed center") {
    const SolutionParams p(-0.28, 0.96, 0.3, 1.0, -2.0, 0.5);
    const Vec4 C = compact_center(p);
    CHECK(C[0] == doctest::Approx(p.c1 / p.a));
    CHECK(C[3] == doctest::Approx(p.c0 / p.b));
    const double x = 0.9, y = 2.2, w = -0.6;
    const double f = compact_profile(p, x, y, w);
    const Vec4 n = ruling_normal(p, x, y);
    const Vec4 X = hypersurface_X_compact(p, x, y, w);
    CHECK(max_abs(X - (C + f * n)) < 1e-13);
    // the profile is affine in w with unit slope
    CHECK(compact_profile(p, x, y, w + 1.0) - f == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("coordinate charts require a tilted sphere, the envelope does not") {
    const SolutionParams flat(1.0, 0.0, 1, 1, 1, 1);
    CHECK_THROWS_AS((void)hypersurface_X_explicit(flat, 0.1, 0.2, 0.3), std::domain_error);
    CHECK_THROWS_AS((void)hypersurface_X_compact(flat, 0.1, 0.2, 0.3), std::domain_error);
    CHECK_THROWS_AS((void)compact_center(flat), std::domain_error);
    const HypersurfaceJet j = envelope_jet(flat, 0.1, 0.2, 0.3);
    for (int k = 0; k < 4; ++k) CHECK(std::isfinite(j.value[k]));
    // with b = 0 the ruling direction is the constant e4 axis
    const Vec4 n = ruling_normal(flat, 0.1, 0.2);
    CHECK(max_abs(n - Vec4{0, 0, 0, -1}) < 1e-15);
}
