#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "fsh4/closed_forms.hpp"
#include "fsh4/grid.hpp"
#include "fsh4/jets.hpp"

namespace fsh4 {

/// Residuals of the first-order system for the direction field l in isothermal
/// parameters, together with the pointwise constraints. E and its derivatives
/// are taken from the jet itself: E = g(l_u,l_u), E_u = 2 g(l_uu,l_u),
/// E_v = 2 g(l_uv,l_u).
struct LSystemResidual {
    Vec4 wave{};        // l_uu - l_vv - (E_u/E) l_u + (E_v/E) l_v
    Vec4 mixed{};       // 2 l_uv - (E_v/E) l_u - (E_u/E) l_v
    double eg = 0.0;    // E - G
    double f = 0.0;     // F
    double unit = 0.0;  // g(l,l) - 1
    double max_abs() const;
};

LSystemResidual residual_l_system(const Jet2Surface& j);

/// Residuals of the scalar companion system driven by a metric coefficient
/// jet: (r_uu - r_vv - (E_u/E) r_u + (E_v/E) r_v, 2 r_uv - (E_v/E) r_u - (E_u/E) r_v).
std::pair<double, double> residual_r_system(const ScalarJet2& r, const ScalarJet2& E);

/// Householder reflections along l_u and l_v plus the data needed for the
/// characteristic pencil of the rewritten second-order system.
struct HouseholderPair {
    Eigen::Matrix4d A = Eigen::Matrix4d::Identity();
    Eigen::Matrix4d B = Eigen::Matrix4d::Identity();
    Eigen::Vector4d lu = Eigen::Vector4d::Zero();
    Eigen::Vector4d lv = Eigen::Vector4d::Zero();
    double E = 0.0;
};

HouseholderPair householder_pair(const Jet2Surface& j);

/// Determinant of the characteristic pencil
///   P(lambda) = lambda^2 A + lambda C + B,  C = 2 (lu lv^T + lv lu^T) / E,
/// evaluated as a polynomial in mu = lambda^2 (imaginary lambda for mu < 0).
/// Equals -(mu + 1)^4 on isothermal jets, so -char_det is (lambda^2 + 1)^4:
/// no real characteristic roots, the system is elliptic.
double char_det(const HouseholderPair& hp, double mu);

/// The rewritten second-order form A l_uu - B l_vv, which reproduces the wave
/// part of residual_l_system under the constraint substitutions.
Vec4 reflected_form_residual(const HouseholderPair& hp, const Jet2Surface& j);

/// Constructive scalar solution: the oscillator G'' + G = 0 integrated in y
/// (RK4), the profile equation (cosh^2 x f')' = c4 cosh x integrated in x by
/// quadrature of f' = (c4 sinh x + c3)/cosh^2 x, assembled as
/// r = G(y)/cosh x + f(x). The c4 contributions cancel against each other.
struct ConstructiveResult {
    GridField<double> field;
    double max_dev_from_closed_form = 0.0;
};

ConstructiveResult solve_r_constructive(const SolutionParams& p, double c4, const GridSpec& spec,
                                        int substeps_per_interval = 16, double tol = 1e-9);

/// Linear least-squares solve of the scalar system on a grid with Dirichlet
/// boundary data, followed by a fit of the solved field to the closed-form
/// basis {1, cos y / cosh x, sin y / cosh x, tanh x}. After the base solve the
/// discretization error is subtracted by defect correction: the truncation of
/// the scheme on the fitted family member is moved to the right-hand side and
/// the system is re-solved (repeated until the coefficients settle). For
/// boundary data drawn from the family the corrected solve is exact up to
/// linear-solver tolerance; for other data the correction is a no-op in the
/// limit and the fit residual reports the distance to the family.
struct RGridResult {
    GridField<double> field;      // defect-corrected solution
    GridField<double> raw_field;  // plain least-squares solve, O(h^2) accurate
    std::array<double, 4> coeffs{};  // c0..c3, fitted to the corrected field
    double fit_rms = 0.0;
    double fit_max = 0.0;
    double lsq_residual = 0.0;  // residual of the corrected system at `field`
    int correction_passes = 0;
};

RGridResult solve_r_grid(const std::function<double(double, double)>& boundary,
                         const GridSpec& spec);

/// Gauss-Newton for the direction field on a grid with Dirichlet boundary.
/// Interior nodes are unknowns; residuals per interior node are the two PDE
/// residuals and three constraints, nondimensionalized by the local E.
/// Convergence is declared on the scaled gradient norm
/// ||J^T r||_inf / max(1, ||r||_2) <= tol, or on step stagnation at a
/// least-squares minimizer.
struct GaussNewtonOptions {
    int max_iter = 50;
    double tol = 1e-9;
    int max_halvings = 20;
    bool parallel = false;
};

struct GaussNewtonResult {
    enum class Status { kConverged, kMaxIter, kDiverged };

    GridField<Vec4> field;
    Status status = Status::kMaxIter;
    int iterations = 0;
    double residual_norm = 0.0;   // ||r||_2 at the final iterate
    double gradient_norm = 0.0;   // scaled ||J^T r||_inf at the final iterate
    bool monotone = true;         // ||r|| non-increasing across accepted steps
    std::vector<double> residual_history;
};

GaussNewtonResult solve_l_gauss_newton(const GridField<Vec4>& initial,
                                       const GaussNewtonOptions& opt = {});

/// Adds a smooth, boundary-vanishing perturbation to the interior nodes of a
/// field: per component a sum of low-frequency sine modes with seeded
/// coefficients, scaled so the sup norm of the perturbation is `amplitude`.
void add_smooth_perturbation(GridField<Vec4>& field, double amplitude, std::uint64_t seed);

/// Hyperplane + sphere fit: the direction field of the construction lies on a
/// 2-sphere inside an affine hyperplane. Fits the hyperplane by total least
/// squares (smallest singular direction), then the sphere inside it.
struct FitResult {
    enum class Status { kOk, kAmbiguous };

    Status status = Status::kOk;
    Vec4 hyperplane_normal{};  // unit; sign fixed by the largest component
    double offset = 0.0;       // <p, normal> = offset on the fit
    double plane_residual = 0.0;
    Vec4 center{};
    double radius = 0.0;
    double max_residual = 0.0;  // worst distance to the fitted sphere
};

FitResult verify_sphere_theorem(const std::vector<Vec4>& points);

}  // namespace fsh4
