// serial vs OpenMP timings for the batch kernels and the Gauss-Newton solve.
// The parallel paths write disjoint slots and reduce serially, so outputs must
// match the serial ones bit for bit; the last column checks that.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
static double now() { return omp_get_wtime(); }
#else
#include <chrono>
static double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}
#endif

#include "fsh4/batch.hpp"
#include "fsh4/closed_forms.hpp"
#include "fsh4/pde.hpp"

using namespace fsh4;

namespace {

void row(const char* name, long n, double ts, double tp, double diff) {
    std::printf("%-18s %9ld   %8.3f s   %8.3f s   %5.2fx   %.3e\n", name, n, ts, tp,
                ts / tp, diff);
}

}  // namespace

int main(int argc, char** argv) {
    const long scale = std::max(1L, argc > 1 ? std::atol(argv[1]) : 1);
    const SolutionParams p(0.6, 0.8, 0.3, -1.2, 0.7, 0.5);

    std::printf("%-18s %9s   %10s   %10s   %6s   %s\n", "kernel", "n", "serial", "parallel",
                "speed", "max|serial-parallel|");

    {
        const long n = 400000 * scale;
        const auto pts = random_points2(static_cast<int>(n), -1.5, 1.5, -3.0, 3.0, 11);
        double t0 = now();
        const ResidualScanResult a = scan_solution_residuals(p, pts, false);
        double t1 = now();
        const ResidualScanResult b = scan_solution_residuals(p, pts, true);
        double t2 = now();
        double diff = 0.0;
        for (long k = 0; k < n; ++k) {
            diff = std::max(diff, std::abs(a.l_residual[k] - b.l_residual[k]));
            diff = std::max(diff, std::abs(a.r_residual[k] - b.r_residual[k]));
        }
        row("residual scan", n, t1 - t0, t2 - t1, diff);
    }

    {
        const long n = 40000 * scale;
        const auto pts =
            random_points3(static_cast<int>(n), -1.5, 1.5, -3.0, 3.0, -1.0, 1.0, 12);
        double t0 = now();
        const SpectrumScanResult a = scan_shape_spectrum(p, pts, false);
        double t1 = now();
        const SpectrumScanResult b = scan_shape_spectrum(p, pts, true);
        double t2 = now();
        double diff = 0.0;
        for (long k = 0; k < n; ++k) {
            diff = std::max(diff, std::abs(a.samples[k].semisymmetry - b.samples[k].semisymmetry));
            diff = std::max(diff,
                            std::abs(a.samples[k].ruling_misalignment -
                                     b.samples[k].ruling_misalignment));
            for (int e = 0; e < 3; ++e)
                diff = std::max(diff, std::abs(a.samples[k].eigenvalues[e] -
                                               b.samples[k].eigenvalues[e]));
        }
        row("spectrum scan", n, t1 - t0, t2 - t1, diff);
    }

    {
        const int nn = static_cast<int>(41 * std::sqrt(static_cast<double>(scale)));
        const GridSpec spec = GridSpec::over(-0.6, 0.6, -0.6, 0.6, nn, nn);
        GridField<Vec4> init = GridField<Vec4>::sample(
            spec, [&](double x, double y) { return sphere_isothermal(p, x, y); });
        add_smooth_perturbation(init, 0.03, 5);

        GaussNewtonOptions opt;
        double t0 = now();
        const GaussNewtonResult a = solve_l_gauss_newton(init, opt);
        double t1 = now();
        opt.parallel = true;
        const GaussNewtonResult b = solve_l_gauss_newton(init, opt);
        double t2 = now();
        double diff = 0.0;
        for (size_t k = 0; k < a.field.values.size(); ++k)
            diff = std::max(diff, max_abs(a.field.values[k] - b.field.values[k]));
        if (a.iterations != b.iterations) diff = 1.0;  // must take identical paths
        row("gauss-newton", static_cast<long>(spec.count()), t1 - t0, t2 - t1, diff);
    }

    return 0;
}
