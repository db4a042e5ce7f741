#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "fsh4/jets.hpp"
#include "fsh4/vec4.hpp"

namespace fsh4 {

/// Uniform tensor grid over [x0, x0 + (nx-1) hx] x [y0, y0 + (ny-1) hy].
struct GridSpec {
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0;
    double hx = 0.0, hy = 0.0;

    static GridSpec over(double xa, double xb, double ya, double yb, int nx, int ny) {
        if (nx < 5 || ny < 5) throw std::invalid_argument("GridSpec: need at least 5x5 nodes");
        return {nx, ny, xa, ya, (xb - xa) / (nx - 1), (yb - ya) / (ny - 1)};
    }

    double x(int i) const { return x0 + i * hx; }
    double y(int j) const { return y0 + j * hy; }
    int count() const { return nx * ny; }
    bool interior(int i, int j) const { return i > 0 && i < nx - 1 && j > 0 && j < ny - 1; }
};

template <class T>
struct GridField {
    GridSpec spec;
    std::vector<T> values;

    explicit GridField(const GridSpec& s) : spec(s), values(s.count()) {}

    T& at(int i, int j) { return values[static_cast<size_t>(i) * spec.ny + j]; }
    const T& at(int i, int j) const { return values[static_cast<size_t>(i) * spec.ny + j]; }

    template <class F>
    static GridField sample(const GridSpec& s, F&& f) {
        GridField g(s);
        for (int i = 0; i < s.nx; ++i)
            for (int j = 0; j < s.ny; ++j) g.at(i, j) = f(s.x(i), s.y(j));
        return g;
    }
};

/// Central-difference 2-jet at an interior node. With richardson = true the
/// O(h^2) stencils on steps h and 2h are extrapolated to O(h^4), which needs
/// two nodes of margin. The mixed derivative is formed in both nesting orders;
/// the jet stores their average and `asymmetry` reports the difference.
struct NumericJetResult {
    Jet2Surface jet;
    double asymmetry = 0.0;
};

NumericJetResult eval_jet2_numeric(const GridField<Vec4>& f, int i, int j,
                                   bool richardson = false);

struct NumericScalarJetResult {
    ScalarJet2 jet;
    double asymmetry = 0.0;
};

NumericScalarJetResult eval_scalar_jet2_numeric(const GridField<double>& f, int i, int j,
                                                bool richardson = false);

/// Intrinsic curvature of an isothermal metric from the 2-jet of its
/// coefficient: K = -(lap log E) / (2E).
double gauss_curvature_isothermal(const ScalarJet2& E_jet);

/// Finite-difference path of the same quantity: E is built from first
/// differences of l, then log E is differenced again. Needs two nodes of
/// margin.
double gauss_curvature_isothermal_fd(const GridField<Vec4>& l, int i, int j);

}  // namespace fsh4
