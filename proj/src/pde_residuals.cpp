#include <cmath>
#include <complex>
#include <stdexcept>

#include "fsh4/pde.hpp"

namespace fsh4 {

double LSystemResidual::max_abs() const {
    double m = std::max(fsh4::max_abs(wave), fsh4::max_abs(mixed));
    m = std::max(m, std::abs(eg));
    m = std::max(m, std::abs(f));
    m = std::max(m, std::abs(unit));
    return m;
}

LSystemResidual residual_l_system(const Jet2Surface& j) {
    const double E = dot(j.d_u, j.d_u);
    if (!(E > 0.0)) throw std::domain_error("residual_l_system: vanishing E");
    const double Eu = 2.0 * dot(j.d_uu, j.d_u);
    const double Ev = 2.0 * dot(j.d_uv, j.d_u);

    LSystemResidual r;
    r.wave = j.d_uu - j.d_vv - (Eu / E) * j.d_u + (Ev / E) * j.d_v;
    r.mixed = 2.0 * j.d_uv - (Ev / E) * j.d_u - (Eu / E) * j.d_v;
    r.eg = E - dot(j.d_v, j.d_v);
    r.f = dot(j.d_u, j.d_v);
    r.unit = dot(j.value, j.value) - 1.0;
    return r;
}

std::pair<double, double> residual_r_system(const ScalarJet2& r, const ScalarJet2& E) {
    if (!(E.value > 0.0)) throw std::domain_error("residual_r_system: vanishing E");
    const double pu = E.d_u / E.value, pv = E.d_v / E.value;
    return {r.d_uu - r.d_vv - pu * r.d_u + pv * r.d_v,
            2.0 * r.d_uv - pv * r.d_u - pu * r.d_v};
}

HouseholderPair householder_pair(const Jet2Surface& j) {
    HouseholderPair hp;
    for (int k = 0; k < 4; ++k) {
        hp.lu[k] = j.d_u[k];
        hp.lv[k] = j.d_v[k];
    }
    const double E = hp.lu.squaredNorm();
    const double G = hp.lv.squaredNorm();
    if (!(E > 0.0) || !(G > 0.0)) throw std::domain_error("householder_pair: vanishing metric");
    hp.E = E;
    hp.A = Eigen::Matrix4d::Identity() - 2.0 / E * hp.lu * hp.lu.transpose();
    hp.B = Eigen::Matrix4d::Identity() - 2.0 / G * hp.lv * hp.lv.transpose();
    return hp;
}

double char_det(const HouseholderPair& hp, double mu) {
    const Eigen::Matrix4d C =
        2.0 / hp.E * (hp.lu * hp.lv.transpose() + hp.lv * hp.lu.transpose());
    if (mu >= 0.0) {
        const double lambda = std::sqrt(mu);
        return (mu * hp.A + lambda * C + hp.B).determinant();
    }
    const std::complex<double> lambda(0.0, std::sqrt(-mu));
    Eigen::Matrix4cd P = mu * hp.A.cast<std::complex<double>>();
    P += lambda * C.cast<std::complex<double>>();
    P += hp.B.cast<std::complex<double>>();
    return P.determinant().real();
}

Vec4 reflected_form_residual(const HouseholderPair& hp, const Jet2Surface& j) {
    Eigen::Vector4d luu, lvv;
    for (int k = 0; k < 4; ++k) {
        luu[k] = j.d_uu[k];
        lvv[k] = j.d_vv[k];
    }
    const Eigen::Vector4d r = hp.A * luu - hp.B * lvv;
    return {r[0], r[1], r[2], r[3]};
}

}  // namespace fsh4
