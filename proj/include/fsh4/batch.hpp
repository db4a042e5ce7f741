#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fsh4/closed_forms.hpp"
#include "fsh4/envelope.hpp"

namespace fsh4 {

/// Batch kernels over point sets. Every kernel fills one output slot per
/// point, so the parallel path writes disjoint memory and the reductions run
/// serially afterwards in index order: results are identical bit for bit with
/// `parallel` on or off, regardless of thread count.

/// Per-point residuals of the closed-form solution pair: the direction-field
/// system evaluated on the isothermal sphere family and the scalar system
/// evaluated on the general scalar solution.
struct ResidualScanResult {
    std::vector<double> l_residual;  // per point, max-abs over the five field residuals
    std::vector<double> r_residual;  // per point, max-abs over the two scalar residuals
    double max_l_residual = 0.0;
    double max_r_residual = 0.0;
    /// Per-equation maxima over the scan, in the order: l wave, l mixed,
    /// E - G, F, unit length, r wave, r mixed.
    std::array<double, 7> equation_max{};
};

ResidualScanResult scan_solution_residuals(const SolutionParams& p,
                                           const std::vector<std::array<double, 2>>& pts,
                                           bool parallel = false);

/// Shape-operator spectrum, semisymmetry residual, and nullity alignment of
/// the envelope chart at one (x, y, w) sample.
struct SpectrumSample {
    double x = 0.0, y = 0.0, w = 0.0;
    bool regular = false;
    bool type_two = false;
    bool biumbilical = false;
    double nu = 0.0;                    // common principal curvature when biumbilical
    std::array<double, 3> eigenvalues{};
    double semisymmetry = 0.0;          // scaled residual of the derivation identity
    int nullity_dim = 0;
    double ruling_misalignment = 0.0;   // angle (rad) between kernel direction and the ruling
};

struct SpectrumScanResult {
    std::vector<SpectrumSample> samples;
    int regular_count = 0;
    int degenerate_count = 0;
    bool all_type_two = true;      // over regular points
    bool all_biumbilical = true;   // over regular points
    bool all_nullity_one = true;   // over regular points
    double max_semisymmetry = 0.0;
    double max_type_two_residual = 0.0;    // max |nu3| / |nu1|
    double max_biumbilical_residual = 0.0; // max |nu1 - nu2| / |nu1|
    double max_ruling_misalignment = 0.0;
};

SpectrumScanResult scan_shape_spectrum(const SolutionParams& p,
                                       const std::vector<std::array<double, 3>>& pts,
                                       bool parallel = false);

/// Seeded uniform sample points, drawn component-by-component in index order.
std::vector<std::array<double, 2>> random_points2(int n, double xa, double xb, double ya,
                                                  double yb, std::uint64_t seed);
std::vector<std::array<double, 3>> random_points3(int n, double xa, double xb, double ya,
                                                  double yb, double wa, double wb,
                                                  std::uint64_t seed);

}  // namespace fsh4
