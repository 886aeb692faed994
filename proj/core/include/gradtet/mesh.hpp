#ifndef GRADTET_MESH_HPP
#define GRADTET_MESH_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gradtet/geometry.hpp"

namespace gradtet {

/// The five tetrahedron categories, keyed by how the closure meets the
/// singular set: not at all (O), at a domain vertex (V), at an interior point
/// of a singular edge (VE), along a singular edge (E), or along a singular
/// edge plus its endpoint vertex (EV).
enum class TetType : std::uint8_t { O = 0, V, VE, E, EV };

const char* to_string(TetType t);
TetType tet_type_from_string(const std::string& s);

/// Ordered 4-tuple of vertex ids with the ordering convention of the
/// refinement rules: v[0] is the singular vertex for V/VE/EV tetrahedra and
/// (v[0],v[1]) is the on-edge tetrahedron edge for E/EV tetrahedra.
/// `edge_forward` records whether v[0]->v[1] points the same way as the
/// x0->x1 edge of the initial tetrahedron that started the E/EV chain; the
/// sign conventions of the relative z-distances depend on it.
struct Tet {
    std::array<int, 4> v{-1, -1, -1, -1};
    TetType type = TetType::O;
    int sv = -1;  // singular vertex entity (V, EV)
    int se = -1;  // singular edge entity (VE, E, EV)
    bool edge_forward = true;
};

/// Where a mesh vertex came from: either an original vertex of the level-0
/// mesh, or the point (1-t)*a + t*b on the parent-mesh edge (a,b), a < b.
struct NodeProvenance {
    int a = -1;
    int b = -1;
    double t = 0.0;
    bool original() const { return a < 0; }
};

/// An immutable tetrahedral mesh level.  Refinement produces a new Mesh whose
/// `parent` points at this one; children of tet i occupy indices 8*i .. 8*i+7
/// in the refined mesh, so ancestry is recoverable from indices alone.
struct Mesh {
    std::vector<Point> points;
    std::vector<NodeProvenance> provenance;
    std::vector<Tet> tets;
    int level = 0;
    std::shared_ptr<const Mesh> parent;
    /// Per-vertex bitmask of boundary facets (empty when no boundary
    /// information has been attached).
    std::vector<std::uint32_t> vertex_facets;

    int n_points() const { return static_cast<int>(points.size()); }
    std::int64_t n_tets() const { return static_cast<std::int64_t>(tets.size()); }

    std::array<Point, 4> tet_points(std::int64_t t) const {
        const auto& T = tets[t];
        return {points[T.v[0]], points[T.v[1]], points[T.v[2]], points[T.v[3]]};
    }
    double tet_volume(std::int64_t t) const {
        auto p = tet_points(t);
        return gradtet::tet_volume(p[0], p[1], p[2], p[3]);
    }

    bool has_boundary_info() const { return !vertex_facets.empty(); }
    bool is_boundary_vertex(int v) const { return vertex_facets[v] != 0; }

    static std::int64_t ancestor_index(std::int64_t tet, int levels_up) { return tet >> (3 * levels_up); }
    static int child_slot(std::int64_t tet) { return static_cast<int>(tet & 7); }

    /// Index of the level-0 tetrahedron this tet descends from.
    std::int64_t initial_tet_of(std::int64_t tet) const { return ancestor_index(tet, level); }
};

/// One-tetrahedron mesh (level 0) for standalone refinement studies.
Mesh make_single_tet_mesh(const std::array<Point, 4>& pts, const Tet& proto);

/// Convex planar boundary facet: a point-membership test against the plane of
/// a convex polygon, used for level-0 boundary detection.
struct Facet {
    std::vector<Point> polygon;  // convex, coplanar loop
    bool contains(const Point& p, double tol) const;
};

/// Mark each level-0 vertex with the facets it lies on (geometric test);
/// refinement propagates the masks combinatorially.
void assign_boundary_facets(Mesh& mesh, const std::vector<Facet>& facets, double tol = 1e-12);

}  // namespace gradtet

#endif
