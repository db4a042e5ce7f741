#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fsh4/closed_forms.hpp"
#include "fsh4/curvature.hpp"
#include "fsh4/grid.hpp"
#include "fsh4/taylor.hpp"

using namespace fsh4;

namespace {

// Richardson central difference of a scalar callable, for cross-checking jets
// against plain floating-point evaluation.
template <class F>
double fd1(F&& f, double x, double h = 1e-4) {
    const double d1 = (f(x + h) - f(x - h)) / (2 * h);
    const double d2 = (f(x + 2 * h) - f(x - 2 * h)) / (4 * h);
    return (4 * d1 - d2) / 3;
}

}  // namespace

TEST_CASE("seeds and constants occupy the expected slots") {
    const Tv3 u = Tv3::seed_u(1.25);
    CHECK(u.value() == 1.25);
    CHECK(u.deriv(1, 0) == 1.0);
    CHECK(u.deriv(0, 1) == 0.0);
    CHECK(u.deriv(2, 0) == 0.0);
    CHECK(u.deriv(1, 1) == 0.0);

    const Tv3 c = 3.5;  // implicit constant
    CHECK(c.value() == 3.5);
    CHECK(c.deriv(1, 0) == 0.0);
    CHECK(c.deriv(0, 1) == 0.0);
}

TEST_CASE("index packs (i, j) by total order") {
    CHECK(Tv3::index(0, 0) == 0);
    CHECK(Tv3::index(1, 0) == 1);
    CHECK(Tv3::index(0, 1) == 2);
    CHECK(Tv3::index(2, 0) == 3);
    CHECK(Tv3::index(1, 1) == 4);
    CHECK(Tv3::index(0, 2) == 5);
    CHECK(Tv3::index(3, 0) == 6);
    CHECK(Tv3::index(0, 3) == 9);
}

TEST_CASE("product rule reproduces the partials of exp(u v)") {
    const double u0 = 0.7, v0 = -0.4;
    Tv3 f(1.0);
    {
        const Tv3 u = Tv3::seed_u(u0), v = Tv3::seed_v(v0);
        f = exp(u * v);
    }
    const double e = std::exp(u0 * v0);
    // d^{i+j}/du^i dv^j of exp(uv) in closed form.
    CHECK(f.value() == doctest::Approx(e).epsilon(1e-14));
    CHECK(f.deriv(1, 0) == doctest::Approx(v0 * e).epsilon(1e-14));
    CHECK(f.deriv(0, 1) == doctest::Approx(u0 * e).epsilon(1e-14));
    CHECK(f.deriv(2, 0) == doctest::Approx(v0 * v0 * e).epsilon(1e-14));
    CHECK(f.deriv(0, 2) == doctest::Approx(u0 * u0 * e).epsilon(1e-14));
    CHECK(f.deriv(1, 1) == doctest::Approx((1 + u0 * v0) * e).epsilon(1e-14));
    CHECK(f.deriv(2, 1) == doctest::Approx((2 * v0 + u0 * v0 * v0) * e).epsilon(1e-13));
    CHECK(f.deriv(1, 2) == doctest::Approx((2 * u0 + u0 * u0 * v0) * e).epsilon(1e-13));
    CHECK(f.deriv(3, 0) == doctest::Approx(v0 * v0 * v0 * e).epsilon(1e-13));
}

TEST_CASE("separable product: partials of cos(u) sinh(v) factor cleanly") {
    const double u0 = -0.9, v0 = 0.6;
    const Tv3 f = cos(Tv3::seed_u(u0)) * sinh(Tv3::seed_v(v0));
    const double cu[4] = {std::cos(u0), -std::sin(u0), -std::cos(u0), std::sin(u0)};
    const double sv[4] = {std::sinh(v0), std::cosh(v0), std::sinh(v0), std::cosh(v0)};
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j)
            CHECK(f.deriv(i, j) == doctest::Approx(cu[i] * sv[j]).epsilon(1e-14));
}

TEST_CASE("composition chain matches finite differences of the double path") {
    // f(u, v) = atan(log(sqrt(u*u + 2) + v) / cosh(v - u)) exercises every
    // registered univariate table through apply().
    auto scalar = [](double u, double v) {
        return std::atan(std::log(std::sqrt(u * u + 2) + v) / std::cosh(v - u));
    };
    auto taylor = [](auto u, auto v) {
        return atan(log(sqrt(u * u + 2.0) + v) * recip(cosh(v - u)));
    };
    const double u0 = 0.35, v0 = 1.2;
    const Tv2 f = taylor(Tv2::seed_u(u0), Tv2::seed_v(v0));
    CHECK(f.value() == doctest::Approx(scalar(u0, v0)).epsilon(1e-15));
    const double fu = fd1([&](double u) { return scalar(u, v0); }, u0);
    const double fv = fd1([&](double v) { return scalar(u0, v); }, v0);
    CHECK(f.deriv(1, 0) == doctest::Approx(fu).epsilon(1e-9));
    CHECK(f.deriv(0, 1) == doctest::Approx(fv).epsilon(1e-9));
    // second partials against FD of the Taylor first partials
    const double fuu = fd1([&](double u) {
        return taylor(Tv1::seed_u(u), Tv1(v0)).deriv(1, 0);
    }, u0);
    const double fuv = fd1([&](double v) {
        return taylor(Tv1::seed_u(u0), Tv1::seed_v(v)).deriv(1, 0);
    }, v0);
    CHECK(f.deriv(2, 0) == doctest::Approx(fuu).epsilon(1e-9));
    CHECK(f.deriv(1, 1) == doctest::Approx(fuv).epsilon(1e-9));
}

TEST_CASE("recip is a true multiplicative inverse jet") {
    const Tv3 x = sinh(Tv3::seed_u(0.8)) + cosh(Tv3::seed_v(-0.3));
    const Tv3 one = x * recip(x);
    CHECK(one.value() == doctest::Approx(1.0).epsilon(1e-15));
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j)
            if (i + j > 0) CHECK(std::abs(one.deriv(i, j)) < 1e-14);
}

TEST_CASE("derive_u lowers the jet consistently") {
    const double u0 = 0.45, v0 = -0.85;
    const Tv3 f = exp(Tv3::seed_u(u0) * Tv3::seed_v(v0));
    const Tv2 fu = f.derive_u();
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; i + j <= 2; ++j)
            CHECK(fu.deriv(i, j) == doctest::Approx(f.deriv(i + 1, j)).epsilon(1e-15));
    const Tv2 fv = f.derive_v();
    CHECK(fv.deriv(1, 1) == doctest::Approx(f.deriv(1, 2)).epsilon(1e-15));
}

TEST_CASE("truncate keeps the low-order slots bit for bit") {
    const Tv3 f = sin(Tv3::seed_u(1.1)) * exp(Tv3::seed_v(0.2));
    const Tv2 g = f.truncate<2>();
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; i + j <= 2; ++j)
            CHECK(g.deriv(i, j) == f.deriv(i, j));
}

TEST_CASE("numeric vector jets converge to the analytic jet") {
    const SolutionParams p(0.6, 0.8, 1.0, 1.0, 1.0, 1.0);
    const GridSpec spec = GridSpec::over(-0.5, 0.5, -0.5, 0.5, 101, 101);
    const auto field = GridField<Vec4>::sample(spec, [&](double x, double y) {
        return sphere_isothermal(p, x, y);
    });

    double worst_plain = 0.0, worst_rich = 0.0, worst_asym = 0.0;
    for (int i = 10; i < spec.nx - 10; i += 16) {
        for (int j = 10; j < spec.ny - 10; j += 16) {
            const Jet2Surface exact =
                analytic_jet2(SurfaceFamily::kSphereIsothermal, p, spec.x(i), spec.y(j));
            const auto plain = eval_jet2_numeric(field, i, j, false);
            const auto rich = eval_jet2_numeric(field, i, j, true);
            auto gap = [&](const Jet2Surface& a) {
                double m = max_abs(a.value - exact.value);
                m = std::max(m, max_abs(a.d_u - exact.d_u));
                m = std::max(m, max_abs(a.d_v - exact.d_v));
                m = std::max(m, max_abs(a.d_uu - exact.d_uu));
                m = std::max(m, max_abs(a.d_uv - exact.d_uv));
                m = std::max(m, max_abs(a.d_vv - exact.d_vv));
                return m;
            };
            worst_plain = std::max(worst_plain, gap(plain.jet));
            worst_rich = std::max(worst_rich, gap(rich.jet));
            worst_asym = std::max(worst_asym, rich.asymmetry);
        }
    }
    // h = 0.01: the plain stencil carries its O(h^2) truncation, the
    // extrapolated one sits well below 1e-6.
    CHECK(worst_plain < 5e-4);
    CHECK(worst_plain > 1e-7);
    CHECK(worst_rich < 1e-6);
    CHECK(worst_asym < 1e-9);
}

TEST_CASE("numeric jets refuse nodes without stencil margin") {
    const GridSpec spec = GridSpec::over(0.0, 1.0, 0.0, 1.0, 9, 9);
    const auto field = GridField<Vec4>::sample(spec, [](double x, double y) {
        return Vec4{x, y, x * y, 1.0};
    });
    CHECK_THROWS_AS((void)eval_jet2_numeric(field, 0, 4), std::out_of_range);
    CHECK_THROWS_AS((void)eval_jet2_numeric(field, 4, 8), std::out_of_range);
    CHECK_NOTHROW((void)eval_jet2_numeric(field, 1, 1));
    // Richardson needs two nodes of margin.
    CHECK_THROWS_AS((void)eval_jet2_numeric(field, 1, 4, true), std::out_of_range);
    CHECK_NOTHROW((void)eval_jet2_numeric(field, 2, 2, true));
}

TEST_CASE("scalar numeric jets track the scalar solution") {
    const SolutionParams p(0.8, -0.6, 0.5, -1.0, 2.0, 0.25);
    const GridSpec spec = GridSpec::over(-0.4, 0.4, -0.4, 0.4, 81, 81);
    const auto field = GridField<double>::sample(spec, [&](double x, double y) {
        return scalar_solution(p, x, y);
    });
    const int i = 40, j = 24;
    const ScalarJet2 exact = scalar_analytic_jet2(p, spec.x(i), spec.y(j));
    const auto rich = eval_scalar_jet2_numeric(field, i, j, true);
    CHECK(rich.jet.value == doctest::Approx(exact.value).epsilon(1e-14));
    CHECK(std::abs(rich.jet.d_u - exact.d_u) < 1e-8);
    CHECK(std::abs(rich.jet.d_v - exact.d_v) < 1e-8);
    CHECK(std::abs(rich.jet.d_uu - exact.d_uu) < 1e-6);
    CHECK(std::abs(rich.jet.d_uv - exact.d_uv) < 1e-6);
    CHECK(std::abs(rich.jet.d_vv - exact.d_vv) < 1e-6);
    CHECK(rich.asymmetry < 1e-9);
}

TEST_CASE("intrinsic curvature from the metric jet, analytic and FD paths") {
    const SolutionParams p(0.6, 0.8);
    const double K_expected = 1.0 + (p.b * p.b) / (p.a * p.a);

    const ScalarJet2 Ejet =
        metric_coefficient_jet(SurfaceFamily::kSphereIsothermal, p, 0.3, -0.7);
    CHECK(gauss_curvature_isothermal(Ejet) == doctest::Approx(K_expected).epsilon(1e-12));

    const GridSpec spec = GridSpec::over(-0.5, 0.5, -0.5, 0.5, 101, 101);
    const auto field = GridField<Vec4>::sample(spec, [&](double x, double y) {
        return sphere_isothermal(p, x, y);
    });
    const double K_fd = gauss_curvature_isothermal_fd(field, 50, 50);
    CHECK(K_fd == doctest::Approx(K_expected).epsilon(1e-4));
}
