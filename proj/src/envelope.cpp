#include "fsh4/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace fsh4 {

namespace {

using V2 = Vec4T<Tv2>;

struct ChartParts {
    V2 base;  // w-independent part P(x, y)
    V2 ruling;  // n(x, y)
};

// Assembles the 3-parameter jet of X(x, y, w) = P(x, y) + w n(x, y).
HypersurfaceJet assemble(const ChartParts& parts, double x, double y, double w) {
    HypersurfaceJet j;
    j.x = x;
    j.y = y;
    j.w = w;
    auto vec = [](const V2& f, int i, int k) {
        Vec4 r;
        for (int c = 0; c < 4; ++c) r[c] = f[c].deriv(i, k);
        return r;
    };
    const Vec4 p0 = vec(parts.base, 0, 0), n0 = vec(parts.ruling, 0, 0);
    const Vec4 px = vec(parts.base, 1, 0), nx = vec(parts.ruling, 1, 0);
    const Vec4 py = vec(parts.base, 0, 1), ny = vec(parts.ruling, 0, 1);
    j.value = p0 + w * n0;
    j.d1[0] = px + w * nx;
    j.d1[1] = py + w * ny;
    j.d1[2] = n0;
    j.d2[0][0] = vec(parts.base, 2, 0) + w * vec(parts.ruling, 2, 0);
    j.d2[0][1] = j.d2[1][0] = vec(parts.base, 1, 1) + w * vec(parts.ruling, 1, 1);
    j.d2[1][1] = vec(parts.base, 0, 2) + w * vec(parts.ruling, 0, 2);
    j.d2[0][2] = j.d2[2][0] = nx;
    j.d2[1][2] = j.d2[2][1] = ny;
    j.d2[2][2] = Vec4{};
    return j;
}

V2 normalized(const V2& v) {
    const Tv2 inv = recip(sqrt(dot(v, v)));
    return inv * v;
}

}  // namespace

Vec4 envelope_point(const Jet2Surface& l_jet, const ScalarJet2& r_jet, double w,
                    double iso_tol) {
    const FirstFundamentalForm ff = first_form(l_jet);
    if (!ff.isothermal(iso_tol))
        throw std::domain_error("envelope_point: jet is not isothermal within tolerance");
    const Vec4 n = fourth_frame_vector(l_jet.value, l_jet.d_u, l_jet.d_v);
    return r_jet.value * l_jet.value + (r_jet.d_u / ff.E) * l_jet.d_u +
           (r_jet.d_v / ff.E) * l_jet.d_v + w * n;
}

HypersurfaceJet envelope_jet(const SolutionParams& p, double x, double y, double w) {
    const Vec4T<Tv3> l3 = sphere_isothermal(p, Tv3::seed_u(x), Tv3::seed_v(y));
    const Tv3 r3 = scalar_solution(p, Tv3::seed_u(x), Tv3::seed_v(y));

    V2 l, lu, lv;
    for (int c = 0; c < 4; ++c) {
        l[c] = l3[c].truncate<2>();
        lu[c] = l3[c].derive_u();
        lv[c] = l3[c].derive_v();
    }
    const Tv2 r = r3.truncate<2>();
    const Tv2 ru = r3.derive_u();
    const Tv2 rv = r3.derive_v();
    const Tv2 invE = recip(dot(lu, lu));

    ChartParts parts;
    parts.base = r * l + (ru * invE) * lu + (rv * invE) * lv;
    parts.ruling = normalized(cross4(lu, lv, l));
    return assemble(parts, x, y, w);
}

HypersurfaceJet ruled_jet(const SolutionParams& p, double x, double y, double w) {
    const Vec4 center = compact_center(p);
    const Tv2 sx = Tv2::seed_u(x), sy = Tv2::seed_v(y);
    // Profile at w = 0; the w term is added by the assembler.
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    const Tv2 trig = p.c1 * cos(sy) + p.c2 * sin(sy) + p.c3 * sinh(sx);
    const Tv2 f0 = Tv2((p.a / p.b) * p.c0) - (p.b / p.a) * trig * recip(cosh(sx));

    ChartParts parts;
    parts.ruling = ruling_normal(p, sx, sy);
    parts.base = f0 * parts.ruling;
    for (int c = 0; c < 4; ++c) parts.base[c] += Tv2(center[c]);
    return assemble(parts, x, y, w);
}

Vec4 ambient_tangent(const HypersurfaceJet& j, const Eigen::Vector3d& xi) {
    return xi[0] * j.d1[0] + xi[1] * j.d1[1] + xi[2] * j.d1[2];
}

ShapeData shape_data(const HypersurfaceJet& j, double degeneracy_tol) {
    ShapeData sd;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) sd.metric(a, b) = dot(j.d1[a], j.d1[b]);

    const double tr = sd.metric.trace() / 3.0;
    if (sd.metric.determinant() < degeneracy_tol * tr * tr * tr) {
        sd.status = ShapeData::Status::kDegenerate;
        return sd;
    }

    const Vec4 nraw = cross4(j.d1[0], j.d1[1], j.d1[2]);
    sd.normal = (1.0 / norm(nraw)) * nraw;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) sd.second_form(a, b) = dot(j.d2[a][b], sd.normal);

    // Metric square root; eigenvalues come from the symmetrized operator
    // G^{-1/2} h G^{-1/2}, similar to A = G^{-1} h.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> gs(sd.metric);
    const Eigen::Vector3d gl = gs.eigenvalues();
    Eigen::Matrix3d ghalf_inv = Eigen::Matrix3d::Zero();
    for (int k = 0; k < 3; ++k)
        ghalf_inv += gs.eigenvectors().col(k) * gs.eigenvectors().col(k).transpose() /
                     std::sqrt(gl[k]);
    const Eigen::Matrix3d sym = ghalf_inv * sd.second_form * ghalf_inv;
    sd.shape_operator = sd.metric.llt().solve(sd.second_form);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> ss(sym);
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int p, int q) {
        return std::abs(ss.eigenvalues()[p]) > std::abs(ss.eigenvalues()[q]);
    });
    for (int k = 0; k < 3; ++k) {
        sd.eigenvalues[k] = ss.eigenvalues()[order[k]];
        sd.eigenvectors.col(k) = ghalf_inv * ss.eigenvectors().col(order[k]);
    }
    return sd;
}

BiumbilicalReport biumbilical_check(const ShapeData& sd, double rel_tol) {
    BiumbilicalReport rep;
    rep.eigenvalues = sd.eigenvalues;
    if (sd.status != ShapeData::Status::kOk) return rep;
    rep.regular = true;
    const double lead = std::abs(sd.eigenvalues[0]);
    if (lead == 0.0) return rep;
    rep.type_two = std::abs(sd.eigenvalues[2]) <= rel_tol * lead &&
                   std::abs(sd.eigenvalues[1]) > rel_tol * lead;
    rep.biumbilical =
        rep.type_two && std::abs(sd.eigenvalues[0] - sd.eigenvalues[1]) <= rel_tol * lead;
    if (rep.biumbilical) rep.nu = 0.5 * (sd.eigenvalues[0] + sd.eigenvalues[1]);
    return rep;
}

}  // namespace fsh4
