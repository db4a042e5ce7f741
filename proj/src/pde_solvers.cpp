#include <Eigen/Dense>
#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fsh4/pde.hpp"
#include "fsh4/rng.hpp"

namespace fsh4 {

namespace {

// Marches a state from `origin` to every coordinate in `coords` with RK4 steps
// no longer than h_target. Coordinates on each side of the origin are visited
// in order of increasing distance; the marched value is recorded per index.
template <class State, class StepFn>
std::vector<State> march(const std::vector<double>& coords, double origin, State init,
                         double h_target, StepFn step) {
    std::vector<int> order(coords.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return coords[a] < coords[b]; });

    std::vector<State> out(coords.size(), init);
    auto advance = [&](double& t, State& s, double target) {
        const double len = target - t;
        const int n = std::max(1, static_cast<int>(std::ceil(std::abs(len) / h_target)));
        const double h = len / n;
        for (int k = 0; k < n; ++k) {
            s = step(s, t, h);
            t += h;
        }
        t = target;
    };

    double t = origin;
    State s = init;
    for (int idx : order) {
        if (coords[idx] < origin) continue;
        advance(t, s, coords[idx]);
        out[idx] = s;
    }
    t = origin;
    s = init;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (coords[*it] >= origin) continue;
        advance(t, s, coords[*it]);
        out[*it] = s;
    }
    return out;
}

struct OscState {
    double g = 0.0;
    double gp = 0.0;
};

}  // namespace

ConstructiveResult solve_r_constructive(const SolutionParams& p, double c4, const GridSpec& spec,
                                        int substeps_per_interval, double tol) {
    if (substeps_per_interval < 1)
        throw std::invalid_argument("solve_r_constructive: substeps_per_interval must be >= 1");

    std::vector<double> xs(spec.nx), ys(spec.ny);
    for (int i = 0; i < spec.nx; ++i) xs[i] = spec.x(i);
    for (int j = 0; j < spec.ny; ++j) ys[j] = spec.y(j);

    const double hx_sub = spec.hx / substeps_per_interval;
    const double hy_sub = spec.hy / substeps_per_interval;

    // A priori RK4 accumulated-error bound ~ M L h^4 / 120 per march, with M a
    // modest bound on the fifth derivatives of the integrands.
    const double reach_x =
        std::max(std::abs(xs.front()), std::abs(xs.back())) + std::abs(std::min(0.0, xs.front()));
    const double reach_y =
        std::max(std::abs(ys.front()), std::abs(ys.back())) + std::abs(std::min(0.0, ys.front()));
    const double mag =
        1.0 + std::abs(p.c1) + std::abs(p.c2) + std::abs(p.c3) + std::abs(c4);
    const double err_est = mag / 120.0 *
                           std::max(reach_y * std::pow(hy_sub, 4), reach_x * std::pow(hx_sub, 4));
    if (err_est > tol)
        throw std::invalid_argument(
            "solve_r_constructive: step count too small for the requested tolerance");

    // Oscillator in y: G'' = c4 - G with G(0) = c1 + c4, G'(0) = c2.
    auto osc_step = [c4](OscState s, double /*t*/, double h) {
        auto f = [c4](OscState q) { return OscState{q.gp, c4 - q.g}; };
        const OscState k1 = f(s);
        const OscState k2 = f({s.g + 0.5 * h * k1.g, s.gp + 0.5 * h * k1.gp});
        const OscState k3 = f({s.g + 0.5 * h * k2.g, s.gp + 0.5 * h * k2.gp});
        const OscState k4 = f({s.g + h * k3.g, s.gp + h * k3.gp});
        return OscState{s.g + h / 6.0 * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g),
                        s.gp + h / 6.0 * (k1.gp + 2.0 * k2.gp + 2.0 * k3.gp + k4.gp)};
    };
    const std::vector<OscState> G =
        march(ys, 0.0, OscState{p.c1 + c4, p.c2}, hy_sub, osc_step);

    // Profile in x: f' = (c4 sinh x + c3) / cosh^2 x with f(0) = c0 - c4,
    // integrated by Simpson quadrature (RK4 reduces to it for f' = q(x)).
    auto q = [&](double x) {
        const double c = std::cosh(x);
        return (c4 * std::sinh(x) + p.c3) / (c * c);
    };
    auto prof_step = [&](double f, double t, double h) {
        return f + h / 6.0 * (q(t) + 4.0 * q(t + 0.5 * h) + q(t + h));
    };
    const std::vector<double> f = march(xs, 0.0, p.c0 - c4, hx_sub, prof_step);

    ConstructiveResult result{GridField<double>(spec), 0.0};
    for (int i = 0; i < spec.nx; ++i) {
        const double sech = 1.0 / std::cosh(xs[i]);
        for (int j = 0; j < spec.ny; ++j) {
            const double value = G[j].g * sech + f[i];
            result.field.at(i, j) = value;
            const double dev = std::abs(value - scalar_solution(p, xs[i], ys[j]));
            result.max_dev_from_closed_form = std::max(result.max_dev_from_closed_form, dev);
        }
    }
    return result;
}

RGridResult solve_r_grid(const std::function<double(double, double)>& boundary,
                         const GridSpec& spec) {
    const int n = spec.count();
    auto col = [&](int i, int j) { return i * spec.ny + j; };

    // Coefficients of the scalar system for the canonical conformal factor
    // E = a^2 / cosh^2 x: E_u / E = -2 tanh x and E_v / E = 0, independent of a.
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs;
    std::vector<double> rhs_vals;
    int row = 0;
    const double s = spec.hx * spec.hy;  // keeps the second-order rows O(1)
    const double ihx2 = 1.0 / (spec.hx * spec.hx);
    const double ihy2 = 1.0 / (spec.hy * spec.hy);
    const double ihxy = 1.0 / (4.0 * spec.hx * spec.hy);

    std::vector<char> pde_row;
    for (int i = 0; i < spec.nx; ++i) {
        for (int j = 0; j < spec.ny; ++j) {
            if (!spec.interior(i, j)) {
                trips.emplace_back(row, col(i, j), 1.0);
                rhs_vals.push_back(boundary(spec.x(i), spec.y(j)));
                pde_row.push_back(0);
                ++row;
                continue;
            }
            const double th = std::tanh(spec.x(i));
            // r_uu - r_vv + 2 tanh(x) r_u = 0
            trips.emplace_back(row, col(i + 1, j), s * (ihx2 + th / spec.hx));
            trips.emplace_back(row, col(i - 1, j), s * (ihx2 - th / spec.hx));
            trips.emplace_back(row, col(i, j), s * (-2.0 * ihx2 + 2.0 * ihy2));
            trips.emplace_back(row, col(i, j + 1), s * -ihy2);
            trips.emplace_back(row, col(i, j - 1), s * -ihy2);
            rhs_vals.push_back(0.0);
            pde_row.push_back(1);
            ++row;
            // 2 r_uv + 2 tanh(x) r_v = 0
            trips.emplace_back(row, col(i + 1, j + 1), s * 2.0 * ihxy);
            trips.emplace_back(row, col(i + 1, j - 1), s * -2.0 * ihxy);
            trips.emplace_back(row, col(i - 1, j + 1), s * -2.0 * ihxy);
            trips.emplace_back(row, col(i - 1, j - 1), s * 2.0 * ihxy);
            trips.emplace_back(row, col(i, j + 1), s * th / spec.hy);
            trips.emplace_back(row, col(i, j - 1), s * -th / spec.hy);
            rhs_vals.push_back(0.0);
            pde_row.push_back(1);
            ++row;
        }
    }

    Eigen::SparseMatrix<double> A(row, n);
    A.setFromTriplets(trips.begin(), trips.end());
    rhs = Eigen::Map<Eigen::VectorXd>(rhs_vals.data(), row);

    const bool direct = n <= 129 * 129;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    Eigen::LeastSquaresConjugateGradient<Eigen::SparseMatrix<double>> lscg;
    Eigen::SparseMatrix<double> AtA;
    if (direct) {
        AtA = Eigen::SparseMatrix<double>(A.transpose()) * A;
        ldlt.compute(AtA);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("solve_r_grid: factorization failed");
    } else {
        lscg.compute(A);
        lscg.setTolerance(1e-13);
        lscg.setMaxIterations(50L * n);
    }
    auto lsq_solve = [&](const Eigen::VectorXd& b) {
        return direct ? Eigen::VectorXd(ldlt.solve(A.transpose() * b))
                      : Eigen::VectorXd(lscg.solve(b));
    };

    // Normal equations of the fit to {1, cos y / cosh x, sin y / cosh x, tanh x}.
    std::vector<Eigen::Vector4d> basis(n);
    Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
    for (int i = 0; i < spec.nx; ++i) {
        const double sech = 1.0 / std::cosh(spec.x(i));
        const double th = std::tanh(spec.x(i));
        for (int j = 0; j < spec.ny; ++j) {
            basis[col(i, j)] =
                Eigen::Vector4d(1.0, std::cos(spec.y(j)) * sech, std::sin(spec.y(j)) * sech, th);
            M += basis[col(i, j)] * basis[col(i, j)].transpose();
        }
    }
    const Eigen::LDLT<Eigen::Matrix4d> fit_ldlt(M);
    auto fit = [&](const Eigen::VectorXd& u) {
        Eigen::Vector4d mb = Eigen::Vector4d::Zero();
        for (int k = 0; k < n; ++k) mb += basis[k] * u[k];
        return Eigen::Vector4d(fit_ldlt.solve(mb));
    };

    Eigen::VectorXd x = lsq_solve(rhs);
    Eigen::VectorXd b_cur = rhs;
    Eigen::Vector4d c = fit(x);
    RGridResult result{GridField<double>(spec), GridField<double>(spec), {}, 0.0, 0.0, 0.0, 0};
    for (int i = 0; i < spec.nx; ++i)
        for (int j = 0; j < spec.ny; ++j) result.raw_field.at(i, j) = x[col(i, j)];

    // Defect correction: move the scheme's truncation on the fitted family
    // member to the right-hand side and re-solve. The fixed point of
    // solve -> fit -> correct is exact family data when the boundary is drawn
    // from the family, because the fitted member then cancels the truncation.
    for (int pass = 0; pass < 4; ++pass) {
        Eigen::VectorXd fam(n);
        for (int k = 0; k < n; ++k) fam[k] = basis[k].dot(c);
        const Eigen::VectorXd tau = A * fam;
        Eigen::VectorXd b_next = rhs;
        for (int r = 0; r < row; ++r)
            if (pde_row[r]) b_next[r] = tau[r];
        const Eigen::VectorXd x_next = lsq_solve(b_next);
        const Eigen::Vector4d c_next = fit(x_next);
        const double dc = (c_next - c).lpNorm<Eigen::Infinity>();
        x = x_next;
        b_cur = b_next;
        c = c_next;
        ++result.correction_passes;
        if (dc <= 1e-13) break;
    }

    for (int i = 0; i < spec.nx; ++i)
        for (int j = 0; j < spec.ny; ++j) result.field.at(i, j) = x[col(i, j)];
    result.lsq_residual = (A * x - b_cur).norm();
    for (int k = 0; k < 4; ++k) result.coeffs[k] = c[k];

    double ss = 0.0;
    for (int k = 0; k < n; ++k) {
        const double e = x[k] - basis[k].dot(c);
        ss += e * e;
        result.fit_max = std::max(result.fit_max, std::abs(e));
    }
    result.fit_rms = std::sqrt(ss / n);
    return result;
}

void add_smooth_perturbation(GridField<Vec4>& field, double amplitude, std::uint64_t seed) {
    const GridSpec& s = field.spec;
    Rng rng(seed);
    double coeff[4][2][2];
    for (auto& comp : coeff)
        for (auto& mrow : comp)
            for (double& c : mrow) c = rng.uniform(-1.0, 1.0);

    const double lx = (s.nx - 1) * s.hx;
    const double ly = (s.ny - 1) * s.hy;
    auto bump = [&](int k, double x, double y) {
        const double xi = (x - s.x0) / lx;
        const double eta = (y - s.y0) / ly;
        double v = 0.0;
        for (int m = 1; m <= 2; ++m)
            for (int nn = 1; nn <= 2; ++nn)
                v += coeff[k][m - 1][nn - 1] * std::sin(m * std::numbers::pi * xi) *
                     std::sin(nn * std::numbers::pi * eta);
        return v;
    };

    double peak = 0.0;
    for (int i = 1; i < s.nx - 1; ++i)
        for (int j = 1; j < s.ny - 1; ++j)
            for (int k = 0; k < 4; ++k) peak = std::max(peak, std::abs(bump(k, s.x(i), s.y(j))));
    if (peak == 0.0) return;
    const double scale = amplitude / peak;
    for (int i = 1; i < s.nx - 1; ++i)
        for (int j = 1; j < s.ny - 1; ++j)
            for (int k = 0; k < 4; ++k) field.at(i, j)[k] += scale * bump(k, s.x(i), s.y(j));
}

FitResult verify_sphere_theorem(const std::vector<Vec4>& points) {
    const int m = static_cast<int>(points.size());
    if (m < 5) throw std::invalid_argument("verify_sphere_theorem: need at least 5 points");

    Eigen::Vector4d centroid = Eigen::Vector4d::Zero();
    for (const Vec4& p : points) centroid += Eigen::Vector4d(p[0], p[1], p[2], p[3]);
    centroid /= m;

    Eigen::MatrixXd D(m, 4);
    for (int k = 0; k < m; ++k)
        for (int c = 0; c < 4; ++c) D(k, c) = points[k][c] - centroid[c];

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeThinV);
    const Eigen::Vector4d sing = svd.singularValues();
    Eigen::Vector4d normal = svd.matrixV().col(3);

    FitResult result;
    // The hyperplane direction is only determined when exactly one singular
    // value is small relative to the spread.
    if (sing[2] <= 10.0 * sing[3] || sing[0] == 0.0) result.status = FitResult::Status::kAmbiguous;

    int imax = 0;
    for (int c = 1; c < 4; ++c)
        if (std::abs(normal[c]) > std::abs(normal[imax])) imax = c;
    if (normal[imax] < 0.0) normal = -normal;
    for (int c = 0; c < 4; ++c) result.hyperplane_normal[c] = normal[c];
    result.offset = centroid.dot(normal);

    for (int k = 0; k < m; ++k) {
        const Eigen::Vector4d p(points[k][0], points[k][1], points[k][2], points[k][3]);
        result.plane_residual =
            std::max(result.plane_residual, std::abs(p.dot(normal) - result.offset));
    }

    // Orthonormal in-plane basis from the Householder map sending normal to
    // -sign(n_3) e_3: its first three columns are orthogonal to normal.
    Eigen::Vector4d wv = normal;
    wv[3] += normal[3] >= 0.0 ? 1.0 : -1.0;
    const Eigen::Matrix4d H = Eigen::Matrix4d::Identity() - 2.0 / wv.squaredNorm() * wv * wv.transpose();
    const Eigen::Matrix<double, 4, 3> Q = H.leftCols<3>();

    // Linear sphere fit in the plane: ||xi||^2 = 2 c . xi + rho.
    Eigen::MatrixXd S(m, 4);
    Eigen::VectorXd t(m);
    Eigen::MatrixXd Xi(m, 3);
    for (int k = 0; k < m; ++k) {
        const Eigen::Vector4d p(points[k][0], points[k][1], points[k][2], points[k][3]);
        const Eigen::Vector3d xi = Q.transpose() * (p - centroid);
        Xi.row(k) = xi;
        S.row(k) << 2.0 * xi[0], 2.0 * xi[1], 2.0 * xi[2], 1.0;
        t[k] = xi.squaredNorm();
    }
    const Eigen::Vector4d sol = (S.transpose() * S).ldlt().solve(S.transpose() * t);
    const Eigen::Vector3d cc(sol[0], sol[1], sol[2]);
    const double rad2 = sol[3] + cc.squaredNorm();
    if (rad2 <= 0.0) {
        result.status = FitResult::Status::kAmbiguous;
        return result;
    }
    result.radius = std::sqrt(rad2);

    const Eigen::Vector4d center4 = centroid + Q * cc;
    for (int c = 0; c < 4; ++c) result.center[c] = center4[c];

    for (int k = 0; k < m; ++k) {
        const Eigen::Vector4d p(points[k][0], points[k][1], points[k][2], points[k][3]);
        const double dplane = p.dot(normal) - result.offset;
        const double dring = (Eigen::Vector3d(Xi.row(k)) - cc).norm() - result.radius;
        result.max_residual = std::max(result.max_residual, std::hypot(dplane, dring));
    }
    return result;
}

}  // namespace fsh4
