#include "fsh4/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fsh4/grid.hpp"

namespace fsh4 {

AlgebraicCurvature::AlgebraicCurvature(Eigen::MatrixXd metric, Eigen::MatrixXd shape_operator)
    : metric_(std::move(metric)), shape_(std::move(shape_operator)) {
    const auto n = metric_.rows();
    if (metric_.cols() != n || shape_.rows() != n || shape_.cols() != n)
        throw std::invalid_argument("AlgebraicCurvature: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gs(metric_);
    if (gs.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("AlgebraicCurvature: metric is not positive definite");
    ghalf_ = Eigen::MatrixXd::Zero(n, n);
    ghalf_inv_ = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::VectorXd u = gs.eigenvectors().col(k);
        ghalf_ += std::sqrt(gs.eigenvalues()[k]) * u * u.transpose();
        ghalf_inv_ += u * u.transpose() / std::sqrt(gs.eigenvalues()[k]);
    }
    sym_ = ghalf_ * shape_ * ghalf_inv_;
    sym_ = 0.5 * (sym_ + sym_.transpose().eval());
}

AlgebraicCurvature AlgebraicCurvature::from_shape_data(const ShapeData& sd) {
    if (sd.status != ShapeData::Status::kOk)
        throw std::domain_error("from_shape_data: degenerate point");
    return {sd.metric, sd.shape_operator};
}

Eigen::VectorXd AlgebraicCurvature::from_orthonormal(const Eigen::VectorXd& y) const {
    return ghalf_inv_ * y;
}

double AlgebraicCurvature::inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    return x.dot(metric_ * y);
}

Eigen::VectorXd AlgebraicCurvature::apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                          const Eigen::VectorXd& z) const {
    const Eigen::VectorXd ax = shape_ * x, ay = shape_ * y;
    return inner(ay, z) * ax - inner(ax, z) * ay;
}

double sectional_curvature(const AlgebraicCurvature& c, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
    const double num = c.inner(c.apply(x, y, y), x);
    const double den = c.inner(x, x) * c.inner(y, y) - c.inner(x, y) * c.inner(x, y);
    return num / den;
}

namespace {

// Curvature action on orthonormal frame vectors: R(e_i, e_j) e_k with the
// symmetric operator S, euclidean inner product.
Eigen::VectorXd frame_apply(const Eigen::MatrixXd& s, int i, int j, const Eigen::VectorXd& z) {
    const Eigen::VectorXd si = s.col(i), sj = s.col(j);
    return sj.dot(z) * si - si.dot(z) * sj;
}

Eigen::VectorXd frame_apply_vec(const Eigen::MatrixXd& s, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& y, const Eigen::VectorXd& z) {
    const Eigen::VectorXd sx = s * x, sy = s * y;
    return sy.dot(z) * sx - sx.dot(z) * sy;
}

}  // namespace

double semisymmetry_residual(const AlgebraicCurvature& c) {
    const Eigen::MatrixXd& s = c.orthonormal_shape();
    const int n = c.dim();

    double norm2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Eigen::VectorXd rv = frame_apply(s, i, j, Eigen::VectorXd::Unit(n, k));
                norm2 += rv.squaredNorm();
            }
    if (norm2 < 1e-280) return 0.0;

    auto unit = [n](int k) { return Eigen::VectorXd::Unit(n, k); };
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    for (int m = 0; m < n; ++m) {
                        const Eigen::VectorXd v = unit(m);
                        const Eigen::VectorXd rzwv = frame_apply(s, k, l, v);
                        Eigen::VectorXd d = frame_apply(s, i, j, rzwv);
                        d -= frame_apply_vec(s, frame_apply(s, i, j, unit(k)), unit(l), v);
                        d -= frame_apply_vec(s, unit(k), frame_apply(s, i, j, unit(l)), v);
                        d -= frame_apply(s, k, l, frame_apply(s, i, j, v));
                        worst = std::max(worst, d.norm());
                    }
    return worst / norm2;
}

NullityData nullity(const AlgebraicCurvature& c, double rel_tol) {
    const int n = c.dim();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.orthonormal_shape());
    const Eigen::VectorXd ev = es.eigenvalues();
    const double lead = ev.cwiseAbs().maxCoeff();

    NullityData nd;
    if (lead == 0.0) {
        nd.status = NullityData::Status::kAllZero;
        nd.dim = n;
        nd.basis = Eigen::MatrixXd::Identity(n, n);
        for (int k = 0; k < n; ++k) nd.basis.col(k) = c.from_orthonormal(nd.basis.col(k));
        return nd;
    }

    std::vector<int> zero;
    bool ambiguous = false;
    for (int k = 0; k < n; ++k) {
        const double m = std::abs(ev[k]);
        if (m <= rel_tol * lead)
            zero.push_back(k);
        else if (m <= 10.0 * rel_tol * lead)
            ambiguous = true;
    }
    if (ambiguous) nd.status = NullityData::Status::kAmbiguous;
    nd.dim = static_cast<int>(zero.size());
    nd.basis = Eigen::MatrixXd(n, nd.dim);
    for (int k = 0; k < nd.dim; ++k)
        nd.basis.col(k) = c.from_orthonormal(es.eigenvectors().col(zero[k]));
    return nd;
}

double DerivativeFormulaReport::max_residual() const {
    double m = frame_second_derivatives;
    m = std::max(m, normal_derivatives);
    m = std::max(m, conformal_ratio_drift);
    m = std::max(m, parallel_normal_drift);
    m = std::max(m, second_normal_residual);
    m = std::max(m, curvature_cross_check);
    return m;
}

namespace {

using V1 = Vec4T<Tv1>;
using V2 = Vec4T<Tv2>;

Vec4 value_of(const V1& f) {
    Vec4 r;
    for (int c = 0; c < 4; ++c) r[c] = f[c].value();
    return r;
}

Vec4 deriv_of(const V1& f, int i, int j) {
    Vec4 r;
    for (int c = 0; c < 4; ++c) r[c] = f[c].deriv(i, j);
    return r;
}

}  // namespace

DerivativeFormulaReport verify_derivative_formulas(const SolutionParams& p, double x, double y) {
    const Vec4T<Tv3> l3 = sphere_isothermal(p, Tv3::seed_u(x), Tv3::seed_v(y));

    V2 l2, lu2, lv2;
    for (int c = 0; c < 4; ++c) {
        l2[c] = l3[c].truncate<2>();
        lu2[c] = l3[c].derive_u();
        lv2[c] = l3[c].derive_v();
    }
    const Tv2 E2 = dot(lu2, lu2);
    const V2 n2 = [&] {
        const V2 raw = cross4(lu2, lv2, l2);
        return recip(sqrt(dot(raw, raw))) * raw;
    }();

    V1 l1, lu1, lv1, n1, luu, luv, lvv;
    for (int c = 0; c < 4; ++c) {
        l1[c] = l2[c].truncate<1>();
        lu1[c] = lu2[c].truncate<1>();
        lv1[c] = lv2[c].truncate<1>();
        n1[c] = n2[c].truncate<1>();
        luu[c] = lu2[c].derive_u();
        luv[c] = lu2[c].derive_v();
        lvv[c] = lv2[c].derive_v();
    }
    const Tv1 E1 = E2.truncate<1>();
    const Tv1 c1 = dot(luu, n1);       // c = g(l_uu, n)
    const Tv1 ratio = c1 / E1;         // c / E

    DerivativeFormulaReport rep;
    rep.c_over_E = ratio.value();

    // Frame expansions of the second derivatives.
    const double E = E1.value();
    const double Eu = E1.deriv(1, 0), Ev = E1.deriv(0, 1);
    const Vec4 lv0 = value_of(lv1), lu0 = value_of(lu1), l0 = value_of(l1), n0 = value_of(n1);
    const double cc = c1.value();
    const Vec4 res_uu =
        value_of(luu) - ((Eu / (2 * E)) * lu0 - (Ev / (2 * E)) * lv0 - E * l0 + cc * n0);
    const Vec4 res_uv = value_of(luv) - ((Ev / (2 * E)) * lu0 + (Eu / (2 * E)) * lv0);
    const Vec4 res_vv =
        value_of(lvv) - (-(Eu / (2 * E)) * lu0 + (Ev / (2 * E)) * lv0 - E * l0 + cc * n0);
    rep.frame_second_derivatives = std::max({norm(res_uu), norm(res_uv), norm(res_vv)});

    // n_u = -(c/E) l_u, n_v = -(c/E) l_v.
    const Vec4 res_nu = deriv_of(n1, 1, 0) + ratio.value() * lu0;
    const Vec4 res_nv = deriv_of(n1, 0, 1) + ratio.value() * lv0;
    rep.normal_derivatives = std::max(norm(res_nu), norm(res_nv));

    rep.conformal_ratio_drift = std::max(std::abs(ratio.deriv(1, 0)), std::abs(ratio.deriv(0, 1)));

    // Parallel unit normal n1 = (c l + E n)/sqrt(c^2 + E^2) has vanishing
    // derivatives; the companion n2 = (-E l + c n)/sqrt(c^2 + E^2) satisfies
    // d_u n2 = -sqrt(1 + (c/E)^2) l_u.
    const Tv1 denom = recip(sqrt(c1 * c1 + E1 * E1));
    V1 par, sec;
    for (int c = 0; c < 4; ++c) {
        par[c] = (c1 * l1[c] + E1 * n1[c]) * denom;
        sec[c] = (Tv1(0.0) - E1 * l1[c] + c1 * n1[c]) * denom;
    }
    rep.parallel_normal_drift = std::max(norm(deriv_of(par, 1, 0)), norm(deriv_of(par, 0, 1)));
    const double slope = std::sqrt(1.0 + ratio.value() * ratio.value());
    rep.second_normal_residual = std::max(norm(deriv_of(sec, 1, 0) + slope * lu0),
                                          norm(deriv_of(sec, 0, 1) + slope * lv0));

    const double K = gauss_curvature_isothermal(
        metric_coefficient_jet(SurfaceFamily::kSphereIsothermal, p, x, y));
    rep.curvature_cross_check = std::abs(K - (1.0 + ratio.value() * ratio.value()));
    return rep;
}

ScalarJet2 metric_coefficient_jet(SurfaceFamily f, const SolutionParams& p, double x, double y) {
    Vec4T<Tv3> l3;
    switch (f) {
        case SurfaceFamily::kSphereIsothermal:
            l3 = sphere_isothermal(p, Tv3::seed_u(x), Tv3::seed_v(y));
            break;
        case SurfaceFamily::kSphereAngular:
            l3 = sphere_angular(p, Tv3::seed_u(x), Tv3::seed_v(y));
            break;
        case SurfaceFamily::kRulingNormal:
            l3 = ruling_normal(p, Tv3::seed_u(x), Tv3::seed_v(y));
            break;
    }
    Vec4T<Tv2> lu;
    for (int c = 0; c < 4; ++c) lu[c] = l3[c].derive_u();
    return ScalarJet2::from(dot(lu, lu), x, y);
}

}  // namespace fsh4
