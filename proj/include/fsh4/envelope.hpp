#pragma once

#include <Eigen/Dense>

#include "fsh4/closed_forms.hpp"
#include "fsh4/jets.hpp"
#include "fsh4/vec4.hpp"

namespace fsh4 {

/// Envelope chart of the hyperplane family determined by (l, r):
/// X = r l + (r_u / E) l_u + (r_v / E) l_v + w n, with n the fourth frame
/// vector of (l_u, l_v, l). The jet must be isothermal within iso_tol
/// (relative); otherwise this is not a chart of the construction.
Vec4 envelope_point(const Jet2Surface& l_jet, const ScalarJet2& r_jet, double w,
                    double iso_tol = 1e-8);

/// 2-jet of a 3-parameter chart (x, y, w) into E^4. Second partials are
/// stored symmetrically.
struct HypersurfaceJet {
    double x = 0.0, y = 0.0, w = 0.0;
    Vec4 value{};
    std::array<Vec4, 3> d1{};                 // d/dx, d/dy, d/dw
    std::array<std::array<Vec4, 3>, 3> d2{};  // d2[i][j] == d2[j][i]
};

/// Exact jet of the envelope chart of the closed-form family. Valid for any
/// admissible params, including b = 0.
HypersurfaceJet envelope_jet(const SolutionParams& p, double x, double y, double w);

/// Exact jet of the ruled chart X = (f0(x,y) + w) n(x,y) + C. Requires b != 0.
HypersurfaceJet ruled_jet(const SolutionParams& p, double x, double y, double w);

/// Tangent vector in ambient coordinates for a coordinate direction xi.
Vec4 ambient_tangent(const HypersurfaceJet& j, const Eigen::Vector3d& xi);

/// First and second fundamental data of a hypersurface chart at one point.
/// Eigenvalues of the shape operator are sorted by |.| descending;
/// eigenvector columns are g-orthonormal coordinate vectors.
struct ShapeData {
    enum class Status { kOk, kDegenerate };

    Status status = Status::kOk;
    Eigen::Matrix3d metric = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d second_form = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d shape_operator = Eigen::Matrix3d::Zero();
    Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();
    Eigen::Matrix3d eigenvectors = Eigen::Matrix3d::Zero();
    Vec4 normal{};
};

/// Builds ShapeData from a chart jet. A point is degenerate when
/// det g < degeneracy_tol * (tr g / 3)^3; such points carry Status::kDegenerate
/// and only the metric is meaningful.
ShapeData shape_data(const HypersurfaceJet& j, double degeneracy_tol = 1e-12);

struct BiumbilicalReport {
    bool regular = false;      // shape data usable
    bool type_two = false;     // rank of the shape operator is exactly 2
    bool biumbilical = false;  // the two nonzero principal curvatures coincide
    double nu = 0.0;           // their common value when biumbilical
    Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();
};

/// Checks the principal-curvature pattern (nu, nu, 0) with relative tolerance
/// rel_tol on the dominant eigenvalue.
BiumbilicalReport biumbilical_check(const ShapeData& sd, double rel_tol = 1e-8);

}  // namespace fsh4
