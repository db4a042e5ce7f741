#include "fsh4/grid.hpp"

#include <cmath>

namespace fsh4 {

namespace {

void require_margin(const GridSpec& s, int i, int j, int m, const char* what) {
    if (i < m || i >= s.nx - m || j < m || j >= s.ny - m)
        throw std::out_of_range(std::string(what) + ": node too close to the boundary");
}

// One scalar component; step multiplier k selects the h or 2h stencil.
struct Stencil {
    double c, xp, xm, yp, ym, xpyp, xpym, xmyp, xmym;
};

template <class T, class Get>
Stencil gather(const GridField<T>& f, int i, int j, int k, Get get) {
    return {get(f.at(i, j)),
            get(f.at(i + k, j)), get(f.at(i - k, j)),
            get(f.at(i, j + k)), get(f.at(i, j - k)),
            get(f.at(i + k, j + k)), get(f.at(i + k, j - k)),
            get(f.at(i - k, j + k)), get(f.at(i - k, j - k))};
}

struct ScalarJetParts {
    double du, dv, duu, dvv, duv_a, duv_b;
};

ScalarJetParts central(const Stencil& s, double hx, double hy) {
    ScalarJetParts p;
    p.du = (s.xp - s.xm) / (2.0 * hx);
    p.dv = (s.yp - s.ym) / (2.0 * hy);
    p.duu = (s.xp - 2.0 * s.c + s.xm) / (hx * hx);
    p.dvv = (s.yp - 2.0 * s.c + s.ym) / (hy * hy);
    // Mixed derivative in the two nesting orders: difference in x of the
    // y-differences, and difference in y of the x-differences.
    p.duv_a = ((s.xpyp - s.xpym) - (s.xmyp - s.xmym)) / (4.0 * hx * hy);
    p.duv_b = ((s.xpyp - s.xmyp) - (s.xpym - s.xmym)) / (4.0 * hx * hy);
    return p;
}

ScalarJetParts richardson2(const ScalarJetParts& h1, const ScalarJetParts& h2) {
    auto ext = [](double fine, double coarse) { return (4.0 * fine - coarse) / 3.0; };
    return {ext(h1.du, h2.du),     ext(h1.dv, h2.dv),     ext(h1.duu, h2.duu),
            ext(h1.dvv, h2.dvv),   ext(h1.duv_a, h2.duv_a), ext(h1.duv_b, h2.duv_b)};
}

template <class T, class Get>
ScalarJetParts component_jet(const GridField<T>& f, int i, int j, bool richardson, Get get) {
    const double hx = f.spec.hx, hy = f.spec.hy;
    const ScalarJetParts p1 = central(gather(f, i, j, 1, get), hx, hy);
    if (!richardson) return p1;
    const ScalarJetParts p2 = central(gather(f, i, j, 2, get), 2.0 * hx, 2.0 * hy);
    return richardson2(p1, p2);
}

}  // namespace

NumericJetResult eval_jet2_numeric(const GridField<Vec4>& f, int i, int j, bool richardson) {
    require_margin(f.spec, i, j, richardson ? 2 : 1, "eval_jet2_numeric");
    NumericJetResult r;
    r.jet.u = f.spec.x(i);
    r.jet.v = f.spec.y(j);
    r.jet.value = f.at(i, j);
    double asym2 = 0.0;
    for (int k = 0; k < 4; ++k) {
        const ScalarJetParts p =
            component_jet(f, i, j, richardson, [k](const Vec4& v) { return v[k]; });
        r.jet.d_u[k] = p.du;
        r.jet.d_v[k] = p.dv;
        r.jet.d_uu[k] = p.duu;
        r.jet.d_vv[k] = p.dvv;
        r.jet.d_uv[k] = 0.5 * (p.duv_a + p.duv_b);
        asym2 += (p.duv_a - p.duv_b) * (p.duv_a - p.duv_b);
    }
    r.asymmetry = std::sqrt(asym2);
    return r;
}

NumericScalarJetResult eval_scalar_jet2_numeric(const GridField<double>& f, int i, int j,
                                                bool richardson) {
    require_margin(f.spec, i, j, richardson ? 2 : 1, "eval_scalar_jet2_numeric");
    const ScalarJetParts p =
        component_jet(f, i, j, richardson, [](double v) { return v; });
    NumericScalarJetResult r;
    r.jet = {f.spec.x(i), f.spec.y(j), f.at(i, j), p.du, p.dv, p.duu,
             0.5 * (p.duv_a + p.duv_b), p.dvv};
    r.asymmetry = std::abs(p.duv_a - p.duv_b);
    return r;
}

double gauss_curvature_isothermal(const ScalarJet2& E) {
    const double lap_log_E = (E.d_uu * E.value - E.d_u * E.d_u +
                              E.d_vv * E.value - E.d_v * E.d_v) /
                             (E.value * E.value);
    return -lap_log_E / (2.0 * E.value);
}

double gauss_curvature_isothermal_fd(const GridField<Vec4>& l, int i, int j) {
    const GridSpec& s = l.spec;
    require_margin(s, i, j, 2, "gauss_curvature_isothermal_fd");
    // log E on the inner 3x3 block around (i, j), E from first differences.
    auto logE = [&](int ii, int jj) {
        const Vec4 du = (1.0 / (2.0 * s.hx)) * (l.at(ii + 1, jj) - l.at(ii - 1, jj));
        return std::log(dot(du, du));
    };
    const double c = logE(i, j);
    const double lap = (logE(i + 1, j) - 2.0 * c + logE(i - 1, j)) / (s.hx * s.hx) +
                       (logE(i, j + 1) - 2.0 * c + logE(i, j - 1)) / (s.hy * s.hy);
    const Vec4 du = (1.0 / (2.0 * s.hx)) * (l.at(i + 1, j) - l.at(i - 1, j));
    return -lap / (2.0 * dot(du, du));
}

}  // namespace fsh4
