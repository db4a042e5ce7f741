#pragma once

#include <Eigen/Dense>

#include "fsh4/closed_forms.hpp"
#include "fsh4/envelope.hpp"
#include "fsh4/jets.hpp"

namespace fsh4 {

/// Pointwise curvature model of a hypersurface: metric g and shape operator A
/// (self-adjoint with respect to g), with the curvature tensor given by
/// R(X,Y)Z = g(AY,Z) AX - g(AX,Z) AY.
class AlgebraicCurvature {
public:
    AlgebraicCurvature(Eigen::MatrixXd metric, Eigen::MatrixXd shape_operator);

    static AlgebraicCurvature from_shape_data(const ShapeData& sd);

    int dim() const { return static_cast<int>(metric_.rows()); }
    const Eigen::MatrixXd& metric() const { return metric_; }
    const Eigen::MatrixXd& shape_operator() const { return shape_; }
    /// Symmetric representative of A in a g-orthonormal frame.
    const Eigen::MatrixXd& orthonormal_shape() const { return sym_; }
    /// Coordinate components of a g-orthonormal frame vector.
    Eigen::VectorXd from_orthonormal(const Eigen::VectorXd& y) const;

    Eigen::VectorXd apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& z) const;

    double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

private:
    Eigen::MatrixXd metric_, shape_, sym_, ghalf_, ghalf_inv_;
};

inline Eigen::VectorXd curvature_apply(const AlgebraicCurvature& c, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& y, const Eigen::VectorXd& z) {
    return c.apply(x, y, z);
}

/// Sectional curvature of the plane spanned by x, y.
double sectional_curvature(const AlgebraicCurvature& c, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);

/// Worst norm of (R(X,Y).R)(Z,W)V over every combination of orthonormal frame
/// vectors, normalized by the squared Frobenius norm of R. Zero (up to
/// rounding) iff the curvature is semi-symmetric. Returns 0 for flat R.
double semisymmetry_residual(const AlgebraicCurvature& c);

struct NullityData {
    enum class Status { kOk, kAmbiguous, kAllZero };

    Status status = Status::kOk;
    int dim = 0;
    /// g-orthonormal coordinate basis of the kernel of A, one column per
    /// dimension.
    Eigen::MatrixXd basis;
};

/// Kernel of the shape operator. Eigenvalues with |nu| <= rel_tol * max|nu|
/// count as zero; eigenvalues within a factor 10 above that band make the
/// split ambiguous. A = 0 reports Status::kAllZero (nullity is everything,
/// not conullity two).
NullityData nullity(const AlgebraicCurvature& c, double rel_tol = 1e-8);

/// Residuals of the structural derivative identities of the closed-form frame
/// at one point. All values are absolute residual norms except where noted.
struct DerivativeFormulaReport {
    double frame_second_derivatives = 0.0;  // l_uu, l_uv, l_vv against the frame expansion
    double normal_derivatives = 0.0;        // n_u + (c/E) l_u and the v counterpart
    double conformal_ratio_drift = 0.0;     // |grad (c/E)|, the ratio is constant
    double parallel_normal_drift = 0.0;     // |grad n1| for n1 = (c l + E n)/sqrt(c^2+E^2)
    double second_normal_residual = 0.0;    // d_x n2 + sqrt(1+c0^2) l_x and v counterpart
    double curvature_cross_check = 0.0;     // |K_intrinsic - (1 + (c/E)^2)|
    double c_over_E = 0.0;                  // the measured ratio c/E
    double max_residual() const;
};

DerivativeFormulaReport verify_derivative_formulas(const SolutionParams& p, double x, double y);

/// 2-jet of the isothermal metric coefficient E(x, y) of a registered family.
ScalarJet2 metric_coefficient_jet(SurfaceFamily f, const SolutionParams& p, double x, double y);

}  // namespace fsh4
