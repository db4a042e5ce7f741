#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fsh4/closed_forms.hpp"
#include "fsh4/grid.hpp"

namespace fsh4 {

/// Projection of E^4 sample points to E^3 for mesh export: drop one ambient
/// coordinate, or project onto the orthogonal complement of a given unit
/// direction (coordinates in a Householder-aligned frame).
enum class Projection { kDrop1, kDrop2, kDrop3, kDrop4, kAxis };

Projection projection_from_string(const std::string& id);

struct MeshOptions {
    Projection projection = Projection::kDrop4;
    Vec4 axis{0.0, 0.0, 0.0, 1.0};    // for kAxis; need not be normalized
    std::vector<double> slices{0.0};  // one sheet per w value
    bool rulings = true;              // connect consecutive slices with segments
};

struct MeshStats {
    long vertices = 0;
    long faces = 0;
    long ruling_segments = 0;
    long skipped_nodes = 0;  // non-finite chart values; incident faces dropped
};

/// Samples the hypersurface chart on the (x, y) grid for each w slice and
/// writes a Wavefront OBJ: nx*ny vertices per slice in row-major order,
/// two counterclockwise triangles per grid cell, and optional "l" segments
/// joining matching nodes of consecutive slices (the straight rulings).
MeshStats write_obj(std::ostream& os, const SolutionParams& p, const GridSpec& grid,
                    const MeshOptions& opt);

}  // namespace fsh4
