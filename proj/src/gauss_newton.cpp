#include <Eigen/Sparse>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fsh4/pde.hpp"

namespace fsh4 {

namespace {

// Forward-mode dual number over the 36 stencil values (9 nodes x 4 components)
// feeding one node's residuals. The value component follows exactly the same
// operation sequence as the plain-double path, so residual-only evaluations
// match assembled residuals bitwise.
template <int N>
struct Grad {
    double v = 0.0;
    std::array<double, N> d{};

    Grad() = default;
    Grad(double x) : v(x) {}  // implicit on purpose: lets constants mix in
};

template <int N>
Grad<N> operator+(const Grad<N>& a, const Grad<N>& b) {
    Grad<N> r(a.v + b.v);
    for (int k = 0; k < N; ++k) r.d[k] = a.d[k] + b.d[k];
    return r;
}
template <int N>
Grad<N> operator-(const Grad<N>& a, const Grad<N>& b) {
    Grad<N> r(a.v - b.v);
    for (int k = 0; k < N; ++k) r.d[k] = a.d[k] - b.d[k];
    return r;
}
template <int N>
Grad<N> operator-(const Grad<N>& a) {
    Grad<N> r(-a.v);
    for (int k = 0; k < N; ++k) r.d[k] = -a.d[k];
    return r;
}
template <int N>
Grad<N> operator*(const Grad<N>& a, const Grad<N>& b) {
    Grad<N> r(a.v * b.v);
    for (int k = 0; k < N; ++k) r.d[k] = a.d[k] * b.v + a.v * b.d[k];
    return r;
}
template <int N>
Grad<N> operator*(double s, const Grad<N>& a) {
    Grad<N> r(s * a.v);
    for (int k = 0; k < N; ++k) r.d[k] = s * a.d[k];
    return r;
}
template <int N>
Grad<N> operator*(const Grad<N>& a, double s) {
    return s * a;
}
template <int N>
Grad<N> operator-(const Grad<N>& a, double s) {
    Grad<N> r = a;
    r.v -= s;
    return r;
}
template <int N>
Grad<N> operator/(double s, const Grad<N>& a) {
    Grad<N> r(s / a.v);
    const double f = -r.v / a.v;
    for (int k = 0; k < N; ++k) r.d[k] = f * a.d[k];
    return r;
}

template <class T>
T dot4(const std::array<T, 4>& a, const std::array<T, 4>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// The 11 residuals of one interior node: the two second-order equations per
/// component and the three pointwise constraints, nondimensionalized by the
/// local E. `at(di, dj, c)` yields component c of the field at offset (di, dj).
template <class T, class FetchFn>
void node_residuals(double hx, double hy, FetchFn&& at, T out[11]) {
    using V = std::array<T, 4>;
    auto vget = [&](int di, int dj) {
        V r;
        for (int c = 0; c < 4; ++c) r[c] = at(di, dj, c);
        return r;
    };
    const V C = vget(0, 0), XP = vget(1, 0), XM = vget(-1, 0), YP = vget(0, 1), YM = vget(0, -1);
    const V PP = vget(1, 1), PM = vget(1, -1), MP = vget(-1, 1), MM = vget(-1, -1);

    const double cu = 0.5 / hx, cv = 0.5 / hy;
    const double cuu = 1.0 / (hx * hx), cvv = 1.0 / (hy * hy), cuv = 0.25 / (hx * hy);
    V lu, lv, luu, lvv, luv;
    for (int c = 0; c < 4; ++c) {
        lu[c] = (XP[c] - XM[c]) * cu;
        lv[c] = (YP[c] - YM[c]) * cv;
        luu[c] = (XP[c] - 2.0 * C[c] + XM[c]) * cuu;
        lvv[c] = (YP[c] - 2.0 * C[c] + YM[c]) * cvv;
        luv[c] = (PP[c] - PM[c] - MP[c] + MM[c]) * cuv;
    }
    const T E = dot4(lu, lu);
    const T G = dot4(lv, lv);
    const T F = dot4(lu, lv);
    const T invE = 1.0 / E;
    const T au = (2.0 * dot4(luu, lu)) * invE;  // E_u / E
    const T av = (2.0 * dot4(luv, lu)) * invE;  // E_v / E
    for (int c = 0; c < 4; ++c) {
        out[c] = (luu[c] - lvv[c] - au * lu[c] + av * lv[c]) * invE;
        out[4 + c] = (2.0 * luv[c] - av * lu[c] - au * lv[c]) * invE;
    }
    out[8] = (E - G) * invE;
    out[9] = F * invE;
    out[10] = dot4(C, C) - 1.0;
}

struct InteriorIndex {
    std::vector<int> of_node;               // node -> interior index or -1
    std::vector<std::array<int, 2>> nodes;  // interior index -> (i, j)

    explicit InteriorIndex(const GridSpec& s) : of_node(s.count(), -1) {
        for (int i = 0; i < s.nx; ++i)
            for (int j = 0; j < s.ny; ++j)
                if (s.interior(i, j)) {
                    of_node[i * s.ny + j] = static_cast<int>(nodes.size());
                    nodes.push_back({i, j});
                }
    }
};

constexpr int kStencilSlots = 36;
using G36 = Grad<kStencilSlots>;

// Residuals plus the dense 11 x 36 local Jacobians, written to disjoint
// per-node slices; safe to fill in parallel with results independent of the
// thread count.
void assemble(const GridField<Vec4>& z, const InteriorIndex& idx, bool parallel,
              Eigen::VectorXd& res, std::vector<double>& jac) {
    const GridSpec& s = z.spec;
    const int n_int = static_cast<int>(idx.nodes.size());
    res.resize(11 * n_int);
    jac.resize(static_cast<size_t>(11 * kStencilSlots) * n_int);
#pragma omp parallel for schedule(static) if (parallel)
    for (int t = 0; t < n_int; ++t) {
        const int i = idx.nodes[t][0], j = idx.nodes[t][1];
        auto fetch = [&](int di, int dj, int c) {
            G36 g(z.at(i + di, j + dj)[c]);
            g.d[4 * ((di + 1) * 3 + (dj + 1)) + c] = 1.0;
            return g;
        };
        G36 out[11];
        node_residuals(s.hx, s.hy, fetch, out);
        for (int k = 0; k < 11; ++k) {
            res[11 * t + k] = out[k].v;
            double* slice = jac.data() + (static_cast<size_t>(11 * t + k)) * kStencilSlots;
            for (int q = 0; q < kStencilSlots; ++q) slice[q] = out[k].d[q];
        }
    }
}

double residual_norm_at(const GridField<Vec4>& z, const InteriorIndex& idx, bool parallel,
                        Eigen::VectorXd& scratch) {
    const GridSpec& s = z.spec;
    const int n_int = static_cast<int>(idx.nodes.size());
    scratch.resize(11 * n_int);
#pragma omp parallel for schedule(static) if (parallel)
    for (int t = 0; t < n_int; ++t) {
        const int i = idx.nodes[t][0], j = idx.nodes[t][1];
        auto fetch = [&](int di, int dj, int c) { return z.at(i + di, j + dj)[c]; };
        double out[11];
        node_residuals(s.hx, s.hy, fetch, out);
        for (int k = 0; k < 11; ++k) scratch[11 * t + k] = out[k];
    }
    return scratch.norm();
}

Eigen::SparseMatrix<double> build_jacobian(const std::vector<double>& jac,
                                           const InteriorIndex& idx, const GridSpec& s) {
    const int n_int = static_cast<int>(idx.nodes.size());
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(jac.size());
    for (int t = 0; t < n_int; ++t) {
        const int i = idx.nodes[t][0], j = idx.nodes[t][1];
        for (int k = 0; k < 11; ++k) {
            const double* slice = jac.data() + (static_cast<size_t>(11 * t + k)) * kStencilSlots;
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const int tt = idx.of_node[(i + di) * s.ny + (j + dj)];
                    if (tt < 0) continue;  // boundary values are data, not unknowns
                    const int slot = 4 * ((di + 1) * 3 + (dj + 1));
                    for (int c = 0; c < 4; ++c) {
                        const double val = slice[slot + c];
                        if (val != 0.0) trips.emplace_back(11 * t + k, 4 * tt + c, val);
                    }
                }
            }
        }
    }
    Eigen::SparseMatrix<double> J(11 * n_int, 4 * n_int);
    J.setFromTriplets(trips.begin(), trips.end());
    return J;
}

}  // namespace

GaussNewtonResult solve_l_gauss_newton(const GridField<Vec4>& initial,
                                       const GaussNewtonOptions& opt) {
    const GridSpec& s = initial.spec;
    const InteriorIndex idx(s);
    const int n_int = static_cast<int>(idx.nodes.size());
    if (n_int == 0) throw std::invalid_argument("solve_l_gauss_newton: grid has no interior");

    GaussNewtonResult result{initial, GaussNewtonResult::Status::kMaxIter, 0, 0.0, 0.0, true, {}};
    GridField<Vec4>& z = result.field;

    Eigen::VectorXd res;
    std::vector<double> jac;
    Eigen::VectorXd scratch;
    assemble(z, idx, opt.parallel, res, jac);
    Eigen::SparseMatrix<double> J = build_jacobian(jac, idx, s);

    result.residual_history.push_back(res.norm());
    while (true) {
        const double rnorm = res.norm();
        const Eigen::VectorXd g = J.transpose() * res;
        const double gscaled = g.lpNorm<Eigen::Infinity>() / std::max(1.0, rnorm);
        if (gscaled <= opt.tol) {
            result.status = GaussNewtonResult::Status::kConverged;
            break;
        }
        if (result.iterations >= opt.max_iter) {
            result.status = GaussNewtonResult::Status::kMaxIter;
            break;
        }

        const Eigen::SparseMatrix<double> JtJ = Eigen::SparseMatrix<double>(J.transpose()) * J;
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(JtJ);
        Eigen::VectorXd delta;
        if (solver.info() == Eigen::Success) delta = solver.solve(-g);
        if (solver.info() != Eigen::Success) {
            result.status = GaussNewtonResult::Status::kDiverged;
            break;
        }

        double zmax = 0.0;
        for (const Vec4& val : z.values) zmax = std::max(zmax, max_abs(val));
        if (delta.lpNorm<Eigen::Infinity>() <= 1e-13 * (1.0 + zmax)) {
            result.status = GaussNewtonResult::Status::kConverged;
            break;  // step below roundoff: already at the least-squares point
        }
        // Predicted relative reduction of |res|^2 by the linearized model; at
        // the least-squares floor the model cannot improve the fit any more.
        if (-g.dot(delta) <= opt.tol * rnorm * rnorm) {
            result.status = GaussNewtonResult::Status::kConverged;
            break;
        }

        double alpha = 1.0;
        bool accepted = false;
        GridField<Vec4> trial = z;
        double rn_trial = rnorm;
        for (int h = 0; h <= opt.max_halvings; ++h) {
            trial = z;
            for (int t = 0; t < n_int; ++t)
                for (int c = 0; c < 4; ++c)
                    trial.at(idx.nodes[t][0], idx.nodes[t][1])[c] += alpha * delta[4 * t + c];
            rn_trial = residual_norm_at(trial, idx, opt.parallel, scratch);
            if (rn_trial < rnorm) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            result.status = GaussNewtonResult::Status::kDiverged;
            break;
        }

        z = trial;
        ++result.iterations;
        result.residual_history.push_back(rn_trial);
        result.monotone = result.monotone && rn_trial <= rnorm;

        assemble(z, idx, opt.parallel, res, jac);
        J = build_jacobian(jac, idx, s);
    }

    result.residual_norm = res.norm();
    result.gradient_norm =
        (J.transpose() * res).lpNorm<Eigen::Infinity>() / std::max(1.0, result.residual_norm);
    return result;
}

}  // namespace fsh4
