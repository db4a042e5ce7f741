#include <algorithm>
#include <cmath>
#include <numbers>

#include "fsh4/batch.hpp"
#include "fsh4/curvature.hpp"
#include "fsh4/pde.hpp"
#include "fsh4/rng.hpp"

namespace fsh4 {

ResidualScanResult scan_solution_residuals(const SolutionParams& p,
                                           const std::vector<std::array<double, 2>>& pts,
                                           bool parallel) {
    const int n = static_cast<int>(pts.size());
    ResidualScanResult result;
    result.l_residual.resize(n);
    result.r_residual.resize(n);
    std::vector<std::array<double, 7>> eq(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (int k = 0; k < n; ++k) {
        const double x = pts[k][0], y = pts[k][1];
        const Jet2Surface lj = analytic_jet2(SurfaceFamily::kSphereIsothermal, p, x, y);
        const LSystemResidual lr = residual_l_system(lj);
        result.l_residual[k] = lr.max_abs();
        const ScalarJet2 rj = scalar_analytic_jet2(p, x, y);
        const ScalarJet2 ej = metric_coefficient_jet(SurfaceFamily::kSphereIsothermal, p, x, y);
        const auto [wave, mixed] = residual_r_system(rj, ej);
        result.r_residual[k] = std::max(std::abs(wave), std::abs(mixed));
        eq[k] = {max_abs(lr.wave), max_abs(lr.mixed),    std::abs(lr.eg), std::abs(lr.f),
                 std::abs(lr.unit), std::abs(wave), std::abs(mixed)};
    }
    for (int k = 0; k < n; ++k) {
        result.max_l_residual = std::max(result.max_l_residual, result.l_residual[k]);
        result.max_r_residual = std::max(result.max_r_residual, result.r_residual[k]);
        for (int e = 0; e < 7; ++e)
            result.equation_max[e] = std::max(result.equation_max[e], eq[k][e]);
    }
    return result;
}

namespace {

SpectrumSample spectrum_at(const SolutionParams& p, double x, double y, double w) {
    SpectrumSample s;
    s.x = x;
    s.y = y;
    s.w = w;
    const HypersurfaceJet jet = envelope_jet(p, x, y, w);
    const ShapeData sd = shape_data(jet);
    if (sd.status != ShapeData::Status::kOk) return s;
    s.regular = true;

    const BiumbilicalReport bi = biumbilical_check(sd);
    s.type_two = bi.type_two;
    s.biumbilical = bi.biumbilical;
    s.nu = bi.nu;
    for (int i = 0; i < 3; ++i) s.eigenvalues[i] = sd.eigenvalues[i];

    const AlgebraicCurvature curv = AlgebraicCurvature::from_shape_data(sd);
    s.semisymmetry = semisymmetry_residual(curv);

    const NullityData nd = nullity(curv);
    s.nullity_dim = nd.dim;
    if (nd.status == NullityData::Status::kOk && nd.dim == 1) {
        const Vec4 t = ambient_tangent(jet, Eigen::Vector3d(nd.basis.col(0)));
        const Vec4& ruling = jet.d1[2];
        const double tn = norm(t) * norm(ruling);
        const double along = std::abs(dot(t, ruling)) / tn;
        const Vec4 rej = t - (dot(t, ruling) / dot(ruling, ruling)) * ruling;
        s.ruling_misalignment = std::atan2(norm(rej) / norm(t), along);
    } else {
        s.ruling_misalignment = std::numbers::pi / 2.0;
    }
    return s;
}

}  // namespace

SpectrumScanResult scan_shape_spectrum(const SolutionParams& p,
                                       const std::vector<std::array<double, 3>>& pts,
                                       bool parallel) {
    const int n = static_cast<int>(pts.size());
    SpectrumScanResult result;
    result.samples.resize(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (int k = 0; k < n; ++k)
        result.samples[k] = spectrum_at(p, pts[k][0], pts[k][1], pts[k][2]);

    for (const SpectrumSample& s : result.samples) {
        if (!s.regular) {
            ++result.degenerate_count;
            continue;
        }
        ++result.regular_count;
        result.all_type_two = result.all_type_two && s.type_two;
        result.all_biumbilical = result.all_biumbilical && s.biumbilical;
        result.all_nullity_one = result.all_nullity_one && s.nullity_dim == 1;
        result.max_semisymmetry = std::max(result.max_semisymmetry, s.semisymmetry);
        const double dominant = std::abs(s.eigenvalues[0]);
        if (dominant > 0.0) {
            result.max_type_two_residual =
                std::max(result.max_type_two_residual, std::abs(s.eigenvalues[2]) / dominant);
            result.max_biumbilical_residual =
                std::max(result.max_biumbilical_residual,
                         std::abs(s.eigenvalues[0] - s.eigenvalues[1]) / dominant);
        }
        result.max_ruling_misalignment =
            std::max(result.max_ruling_misalignment, s.ruling_misalignment);
    }
    return result;
}

std::vector<std::array<double, 2>> random_points2(int n, double xa, double xb, double ya,
                                                  double yb, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::array<double, 2>> pts(n);
    for (auto& p : pts) p = {rng.uniform(xa, xb), rng.uniform(ya, yb)};
    return pts;
}

std::vector<std::array<double, 3>> random_points3(int n, double xa, double xb, double ya,
                                                  double yb, double wa, double wb,
                                                  std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::array<double, 3>> pts(n);
    for (auto& p : pts) p = {rng.uniform(xa, xb), rng.uniform(ya, yb), rng.uniform(wa, wb)};
    return pts;
}

}  // namespace fsh4
