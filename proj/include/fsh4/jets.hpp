#pragma once

#include <stdexcept>

#include "fsh4/taylor.hpp"
#include "fsh4/vec4.hpp"

namespace fsh4 {

/// 2-jet of a scalar field at a stated parameter point.
struct ScalarJet2 {
    double u = 0.0, v = 0.0;
    double value = 0.0;
    double d_u = 0.0, d_v = 0.0;
    double d_uu = 0.0, d_uv = 0.0, d_vv = 0.0;

    static ScalarJet2 from(const Tv2& t, double u, double v) {
        return {u, v, t.deriv(0, 0), t.deriv(1, 0), t.deriv(0, 1),
                t.deriv(2, 0), t.deriv(1, 1), t.deriv(0, 2)};
    }
    static ScalarJet2 from(const Tv3& t, double u, double v) {
        return from(t.truncate<2>(), u, v);
    }
};

/// 2-jet of an E^4-valued map at a stated parameter point. d_uv == d_vu by
/// construction; finite-difference producers report their asymmetry separately.
struct Jet2Surface {
    double u = 0.0, v = 0.0;
    Vec4 value{};
    Vec4 d_u{}, d_v{};
    Vec4 d_uu{}, d_uv{}, d_vv{};

    template <int N>
    static Jet2Surface from(const Vec4T<TaylorVar<N>>& t, double u, double v) {
        static_assert(N >= 2);
        Jet2Surface j;
        j.u = u;
        j.v = v;
        for (int k = 0; k < 4; ++k) {
            j.value[k] = t[k].deriv(0, 0);
            j.d_u[k] = t[k].deriv(1, 0);
            j.d_v[k] = t[k].deriv(0, 1);
            j.d_uu[k] = t[k].deriv(2, 0);
            j.d_uv[k] = t[k].deriv(1, 1);
            j.d_vv[k] = t[k].deriv(0, 2);
        }
        return j;
    }
};

struct FirstFundamentalForm {
    double E = 0.0, F = 0.0, G = 0.0;

    double det() const { return E * G - F * F; }
    bool regular() const { return E > 0.0 && G > 0.0 && det() > 0.0; }
    bool isothermal(double rel_tol) const {
        const double s = std::max(E, G);
        return regular() && std::abs(E - G) <= rel_tol * s && std::abs(F) <= rel_tol * s;
    }
};

inline FirstFundamentalForm first_form(const Jet2Surface& j) {
    return {dot(j.d_u, j.d_u), dot(j.d_u, j.d_v), dot(j.d_v, j.d_v)};
}

/// Unit vector completing (l_u, l_v, l) to a positively oriented frame of E^4.
/// Throws when the triple is numerically dependent: ||cross|| below
/// degeneracy_tol times the product of the input norms.
inline Vec4 fourth_frame_vector(const Vec4& l, const Vec4& l_u, const Vec4& l_v,
                                double degeneracy_tol = 1e-10) {
    const Vec4 n = cross4(l_u, l_v, l);
    const double m = norm(n);
    const double scale = norm(l_u) * norm(l_v) * norm(l);
    if (!(m > degeneracy_tol * scale))
        throw std::domain_error("fourth_frame_vector: degenerate frame triple");
    return (1.0 / m) * n;
}

/// Exact 2-jet of an analytic map f: (u,v) -> E^4 given as a template over the
/// scalar type.
template <class F>
Jet2Surface jet2_of(F&& f, double u, double v) {
    const Vec4T<Tv2> t = f(Tv2::seed_u(u), Tv2::seed_v(v));
    return Jet2Surface::from(t, u, v);
}

template <class F>
ScalarJet2 scalar_jet2_of(F&& f, double u, double v) {
    const Tv2 t = f(Tv2::seed_u(u), Tv2::seed_v(v));
    return ScalarJet2::from(t, u, v);
}

}  // namespace fsh4
