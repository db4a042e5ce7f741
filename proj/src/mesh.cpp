#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fsh4/envelope.hpp"
#include "fsh4/mesh.hpp"

namespace fsh4 {

Projection projection_from_string(const std::string& id) {
    if (id == "drop1") return Projection::kDrop1;
    if (id == "drop2") return Projection::kDrop2;
    if (id == "drop3") return Projection::kDrop3;
    if (id == "drop4") return Projection::kDrop4;
    if (id == "axis") return Projection::kAxis;
    throw std::invalid_argument("unknown projection '" + id +
                                "' (use drop1..drop4 or axis)");
}

namespace {

struct Projector {
    Projection kind;
    Eigen::Matrix4d H = Eigen::Matrix4d::Identity();  // for kAxis

    std::array<double, 3> apply(const Vec4& v) const {
        switch (kind) {
            case Projection::kDrop1: return {v[1], v[2], v[3]};
            case Projection::kDrop2: return {v[0], v[2], v[3]};
            case Projection::kDrop3: return {v[0], v[1], v[3]};
            case Projection::kDrop4: return {v[0], v[1], v[2]};
            case Projection::kAxis: break;
        }
        const Eigen::Vector4d p = H * Eigen::Vector4d(v[0], v[1], v[2], v[3]);
        return {p[0], p[1], p[2]};
    }
};

Projector make_projector(const MeshOptions& opt) {
    Projector pr{opt.projection};
    if (opt.projection != Projection::kAxis) return pr;
    Eigen::Vector4d a(opt.axis[0], opt.axis[1], opt.axis[2], opt.axis[3]);
    const double len = a.norm();
    if (!(len > 0.0) || !std::isfinite(len))
        throw std::invalid_argument("projection axis must be a nonzero finite vector");
    a /= len;
    // Householder map sending the axis to -sign(a_3) e_3; its first three rows
    // give coordinates in the orthogonal complement of the axis.
    Eigen::Vector4d w = a;
    w[3] += a[3] >= 0.0 ? 1.0 : -1.0;
    pr.H = Eigen::Matrix4d::Identity() - 2.0 / w.squaredNorm() * w * w.transpose();
    return pr;
}

}  // namespace

MeshStats write_obj(std::ostream& os, const SolutionParams& p, const GridSpec& grid,
                    const MeshOptions& opt) {
    if (opt.slices.empty()) throw std::invalid_argument("write_obj: need at least one w slice");
    const Projector pr = make_projector(opt);
    const int nx = grid.nx, ny = grid.ny;
    const long per_slice = static_cast<long>(nx) * ny;

    MeshStats stats;
    std::vector<char> ok(per_slice * opt.slices.size(), 1);

    char line[160];
    for (size_t s = 0; s < opt.slices.size(); ++s) {
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                const Vec4 X = envelope_jet(p, grid.x(i), grid.y(j), opt.slices[s]).value;
                const std::array<double, 3> q = pr.apply(X);
                const bool finite =
                    std::isfinite(q[0]) && std::isfinite(q[1]) && std::isfinite(q[2]);
                if (!finite) {
                    ok[s * per_slice + i * ny + j] = 0;
                    ++stats.skipped_nodes;
                    // placeholder keeps OBJ indices aligned; no face uses it
                    os << "v 0 0 0\n";
                } else {
                    std::snprintf(line, sizeof line, "v %.16e %.16e %.16e\n", q[0], q[1], q[2]);
                    os << line;
                }
                ++stats.vertices;
            }
        }
    }

    auto idx = [&](size_t s, int i, int j) {
        return static_cast<long>(s) * per_slice + static_cast<long>(i) * ny + j + 1;  // 1-based
    };
    auto usable = [&](size_t s, int i, int j) { return ok[s * per_slice + i * ny + j] != 0; };

    for (size_t s = 0; s < opt.slices.size(); ++s) {
        for (int i = 0; i + 1 < nx; ++i) {
            for (int j = 0; j + 1 < ny; ++j) {
                const bool c00 = usable(s, i, j), c10 = usable(s, i + 1, j),
                           c11 = usable(s, i + 1, j + 1), c01 = usable(s, i, j + 1);
                if (c00 && c10 && c11) {
                    std::snprintf(line, sizeof line, "f %ld %ld %ld\n", idx(s, i, j),
                                  idx(s, i + 1, j), idx(s, i + 1, j + 1));
                    os << line;
                    ++stats.faces;
                }
                if (c00 && c11 && c01) {
                    std::snprintf(line, sizeof line, "f %ld %ld %ld\n", idx(s, i, j),
                                  idx(s, i + 1, j + 1), idx(s, i, j + 1));
                    os << line;
                    ++stats.faces;
                }
            }
        }
    }

    if (opt.rulings) {
        for (size_t s = 0; s + 1 < opt.slices.size(); ++s) {
            for (int i = 0; i < nx; ++i) {
                for (int j = 0; j < ny; ++j) {
                    if (!usable(s, i, j) || !usable(s + 1, i, j)) continue;
                    std::snprintf(line, sizeof line, "l %ld %ld\n", idx(s, i, j),
                                  idx(s + 1, i, j));
                    os << line;
                    ++stats.ruling_segments;
                }
            }
        }
    }
    return stats;
}

}  // namespace fsh4
