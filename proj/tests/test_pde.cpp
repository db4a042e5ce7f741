#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fsh4/curvature.hpp"
#include "fsh4/pde.hpp"
#include "fsh4/rng.hpp"

using namespace fsh4;

TEST_CASE("closed-form pair annihilates both residual systems") {
    Rng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const SolutionParams p = SolutionParams::from_angle(rng.uniform(-1.3, 1.3),
                                                            rng.uniform(-2, 2), rng.uniform(-2, 2),
                                                            rng.uniform(-2, 2), rng.uniform(-2, 2));
        const double x = rng.uniform(-2, 2), y = rng.uniform(-4, 4);
        const Jet2Surface lj = analytic_jet2(SurfaceFamily::kSphereIsothermal, p, x, y);
        CHECK(residual_l_system(lj).max_abs() < 1e-13);

        const ScalarJet2 rj = scalar_analytic_jet2(p, x, y);
        const ScalarJet2 Ej = metric_coefficient_jet(SurfaceFamily::kSphereIsothermal, p, x, y);
        const auto [wave, mixed] = residual_r_system(rj, Ej);
        CHECK(std::abs(wave) < 1e-12);
        CHECK(std::abs(mixed) < 1e-12);
    }
}

TEST_CASE("the residual evaluators are not vacuous") {
    const SolutionParams p(0.6, 0.8, 1, 1, 1, 1);
    const double x = 0.4, y = -0.9;

    // a scaled direction field breaks the unit constraint
    Jet2Surface lj = analytic_jet2(SurfaceFamily::kSphereIsothermal, p, x, y);
    Jet2Surface scaled = lj;
    scaled.value = 1.1 * scaled.value;
    scaled.d_u = 1.1 * scaled.d_u;
    scaled.d_v = 1.1 * scaled.d_v;
    scaled.d_uu = 1.1 * scaled.d_uu;
    scaled.d_uv = 1.1 * scaled.d_uv;
    scaled.d_vv = 1.1 * scaled.d_vv;
    CHECK(residual_l_system(scaled).max_abs() > 1e-2);

    // a corrupted second derivative breaks the wave equation
    Jet2Surface bent = lj;
    bent.d_uu = 1.01 * bent.d_uu;
    CHECK(residual_l_system(bent).max_abs() > 1e-4);

    ScalarJet2 rj = scalar_analytic_jet2(p, x, y);
    const ScalarJet2 Ej = metric_coefficient_jet(SurfaceFamily::kSphereIsothermal, p, x, y);
    rj.d_uu *= 1.02;
    const auto [wave, mixed] = residual_r_system(rj, Ej);
    CHECK(std::abs(wave) > 1e-5);
}

TEST_CASE("householder pair reflects the frame directions") {
    const SolutionParams p(0.6, 0.8, 1, 1, 1, 1);
    const Jet2Surface j = analytic_jet2(SurfaceFamily::kSphereIsothermal, p, 0.3, 1.1);
    const HouseholderPair hp = householder_pair(j);

    CHECK((hp.A * hp.A - Eigen::Matrix4d::Identity()).norm() < 1e-14);
    CHECK((hp.B * hp.B - Eigen::Matrix4d::Identity()).norm() < 1e-14);
    CHECK(hp.A.determinant() == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(hp.B.determinant() == doctest::Approx(-1.0).epsilon(1e-13));

    // A flips l_u and fixes its orthogonal complement; B does the same for l_v
    CHECK((hp.A * hp.lu + hp.lu).norm() < 1e-13 * hp.lu.norm());
    CHECK((hp.B * hp.lv + hp.lv).norm() < 1e-13 * hp.lv.norm());
    CHECK((hp.A * hp.lv - hp.lv).norm() < 1e-13 * hp.lv.norm());  // lv is orthogonal to lu
    CHECK(hp.E == doctest::Approx(hp.lu.squaredNorm()).epsilon(1e-13));
}

TEST_CASE("characteristic determinant is minus a perfect fourth power") {
    const SolutionParams p(0.28, 0.96, 0.5, -1, 2, 0.3);
    Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const double x = rng.uniform(-1.5, 1.5), y = rng.uniform(-3, 3);
        const HouseholderPair hp =
            householder_pair(analytic_jet2(SurfaceFamily::kSphereIsothermal, p, x, y));
        for (const double mu : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0}) {
            const double expect = std::pow(mu + 1.0, 4);
            CHECK(std::abs(-char_det(hp, mu) - expect) < 1e-11 * std::max(1.0, expect));
        }
        // no real characteristic directions: -det is strictly positive off mu = -1
        CHECK(-char_det(hp, 0.37) > 0.5);
    }
}

TEST_CASE("dropping the cross term spoils the fourth-power structure") {
    // Reflections alone (lambda^2 A + B) do not reproduce (mu + 1)^4; the
    // mixed-derivative coefficient is what completes the square.
    const SolutionParams p(0.6, 0.8, 1, 1, 1, 1);
    const HouseholderPair hp =
        householder_pair(analytic_jet2(SurfaceFamily::kSphereIsothermal, p, 0.4, -0.7));
    const double mu = 1.0;
    const Eigen::Matrix4d two_term = mu * hp.A + hp.B;
    CHECK(std::abs(two_term.determinant() - (-std::pow(mu + 1.0, 4))) > 1.0);
}

TEST_CASE("rewritten second-order form agrees with the wave residual") {
    const SolutionParams p(-0.96, 0.28, 0, 2, -1, 1);
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const double x = rng.uniform(-1.5, 1.5), y = rng.uniform(-3, 3);
        const Jet2Surface j = analytic_jet2(SurfaceFamily::kSphereIsothermal, p, x, y);
        const HouseholderPair hp = householder_pair(j);
        CHECK(max_abs(reflected_form_residual(hp, j)) < 1e-12);
    }
}

TEST_CASE("constructive integration reproduces the closed form") {
    const SolutionParams p(0.6, 0.8, 0.7, 1.5, -0.4, 1.1);
    const GridSpec spec = GridSpec::over(-1.0, 1.0, -3.0, 3.0, 41, 41);
    // the grid is coarse, so the integrator needs finer substeps to clear its
    // own a-priori error bound
    const ConstructiveResult res = solve_r_constructive(p, 2.5, spec, 32);
    CHECK(res.max_dev_from_closed_form < 1e-7);

    // the result does not depend on the free constant of the profile equation
    const ConstructiveResult res2 = solve_r_constructive(p, -4.0, spec, 32);
    double spread = 0.0;
    for (size_t k = 0; k < res.field.values.size(); ++k)
        spread = std::max(spread, std::abs(res.field.values[k] - res2.field.values[k]));
    CHECK(spread < 1e-8);
}

TEST_CASE("constructive solver reports an unattainable tolerance") {
    const SolutionParams p(0.6, 0.8, 0, 1, 1, 1);
    const GridSpec spec = GridSpec::over(-1.0, 1.0, -3.0, 3.0, 11, 11);
    CHECK_THROWS_AS((void)solve_r_constructive(p, 1.0, spec, 1, 1e-14), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_r_constructive(p, 1.0, spec, 0), std::invalid_argument);
}

TEST_CASE("sphere fit recovers an exact sphere-in-hyperplane configuration") {
    const SolutionParams p(0.6, 0.8, 1, 1, 1, 1);
    std::vector<Vec4> pts;
    Rng rng(44);
    for (int k = 0; k < 200; ++k)
        pts.push_back(sphere_isothermal(p, rng.uniform(-2, 2), rng.uniform(-4, 4)));
    const FitResult fit = verify_sphere_theorem(pts);
    CHECK(fit.status == FitResult::Status::kOk);
    CHECK(fit.plane_residual < 1e-12);
    CHECK(fit.max_residual < 1e-12);
    CHECK(fit.radius == doctest::Approx(p.a).epsilon(1e-12));
    // hyperplane x4 = b, normal fixed to +e4 by the sign convention
    CHECK(max_abs(fit.hyperplane_normal - Vec4{0, 0, 0, 1}) < 1e-12);
    CHECK(fit.offset == doctest::Approx(p.b).epsilon(1e-12));
    // center sits at height b over the origin
    CHECK(max_abs(fit.center - Vec4{0, 0, 0, p.b}) < 1e-12);
}

TEST_CASE("sphere fit rejects starved or rank-deficient inputs") {
    std::vector<Vec4> few = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    CHECK_THROWS_AS((void)verify_sphere_theorem(few), std::invalid_argument);

    // a circle spans only two ambient directions: the hyperplane is ambiguous
    std::vector<Vec4> circle;
    for (int k = 0; k < 24; ++k) {
        const double t = 0.26 * k;
        circle.push_back({std::cos(t), std::sin(t), 0.0, 0.0});
    }
    CHECK(verify_sphere_theorem(circle).status == FitResult::Status::kAmbiguous);
}

TEST_CASE("smooth perturbation is seeded, scaled, and boundary-preserving") {
    const GridSpec spec = GridSpec::over(-1, 1, -1, 1, 17, 17);
    const SolutionParams p(0.6, 0.8, 1, 1, 1, 1);
    auto base = GridField<Vec4>::sample(spec, [&](double x, double y) {
        return sphere_isothermal(p, x, y);
    });
    auto f1 = base, f2 = base, f3 = base;
    add_smooth_perturbation(f1, 0.05, 77);
    add_smooth_perturbation(f2, 0.05, 77);
    add_smooth_perturbation(f3, 0.05, 78);

    double sup = 0.0, rep = 0.0, other = 0.0;
    for (int i = 0; i < spec.nx; ++i) {
        for (int j = 0; j < spec.ny; ++j) {
            const bool boundary = !spec.interior(i, j);
            const double d = max_abs(f1.at(i, j) - base.at(i, j));
            if (boundary) CHECK(d == 0.0);
            sup = std::max(sup, d);
            rep = std::max(rep, max_abs(f1.at(i, j) - f2.at(i, j)));
            other = std::max(other, max_abs(f1.at(i, j) - f3.at(i, j)));
        }
    }
    CHECK(sup == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(rep == 0.0);       // same seed, same field
    CHECK(other > 1e-3);     // different seed, different field
}
