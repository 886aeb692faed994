#ifndef GRADTET_SHAPE_HPP
#define GRADTET_SHAPE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gradtet/mesh.hpp"
#include "gradtet/singular_set.hpp"

namespace gradtet::shape {

/// Local Cartesian frame of an initial E/EV tetrahedron: ez runs along the
/// singular edge from x0 toward x1 (the positive direction), and x2 lies in
/// the xz-plane.  The origin is placed per use; maps center it at the on-edge
/// midpoint of the tetrahedron being mapped.
struct EdgeFrame {
    Point origin;
    Vec3 ex, ey, ez;
    Vec3 local(const Point& p) const {
        const Vec3 d = p - origin;
        return {dot(d, ex), dot(d, ey), dot(d, ez)};
    }
};

EdgeFrame make_edge_frame(const std::array<Point, 4>& initial_pts);

/// Shape constants of the reference tetrahedron built from an initial E/EV
/// tetrahedron: hat x0 = (0,0,-l0/2), hat x1 = (0,0,l0/2), and hat x2/x3 are
/// the transverse coordinates of x2/x3 dropped to the plane z = -l0/2.
struct RefTetShape {
    double lambda2 = 0.0;  // transverse x of x2 (x2 has local y = 0)
    double lambda3 = 0.0;
    double xi3 = 0.0;
    double l0 = 0.0;
    std::array<Point, 4> reference_tet() const {
        return {Point{0, 0, -l0 / 2}, Point{0, 0, l0 / 2}, Point{lambda2, 0, -l0 / 2},
                Point{lambda3, xi3, -l0 / 2}};
    }
};

RefTetShape make_ref_shape(const std::array<Point, 4>& initial_pts, const EdgeFrame& frame);

/// Relative z-distances of the two off-edge vertices (slots 2 and 3).
/// first[i] is c_{gamma,1} measured from the first vertex (the on-edge vertex
/// closer to the initial x0), second[i] = 1 - first[i].
struct RelativeDistances {
    std::array<double, 2> first{};
    std::array<double, 2> second{};
};

RelativeDistances relative_z_distances(const std::array<Point, 4>& pts, bool edge_forward,
                                       const EdgeFrame& frame);

/// Absolute relative distance c_T: the largest of the four |c| values.
double absolute_distance(const std::array<Point, 4>& pts, bool edge_forward,
                         const EdgeFrame& frame);

/// Reference transformation [[s,0,0],[0,s,0],[b1*s,b2*s,w]] acting on local
/// coordinates.
struct RefMap {
    double s = 1.0;
    double w = 1.0;
    double b1 = 0.0;
    double b2 = 0.0;
    Vec3 apply(const Vec3& p) const {
        return {s * p.x, s * p.y, b1 * s * p.x + b2 * s * p.y + w * p.z};
    }
};

/// Isotropic dilation sending the i-th vertex layer back to the zeroth.
RefMap dilation_v(int i, double kappa);

/// Map an E-descendant at (relative) level i onto the reference tetrahedron;
/// local coordinates are centered at the midpoint of the tet's on-edge edge.
RefMap reference_map_e(const std::array<Point, 4>& tet_pts, const EdgeFrame& frame,
                       const RefTetShape& shape, double kappa_e, int i);

/// Map an EV-descendant at level i onto the reference tetrahedron.
RefMap reference_map_ev(const std::array<Point, 4>& tet_pts, const EdgeFrame& frame,
                        const RefTetShape& shape, double kappa_ev, double kappa_v, int i);

/// Map a VE tetrahedron at level i, whose VE ancestry starts at level k (the
/// ancestor at k-1 being an E-tetrahedron T_{k-1}), into the once-refined
/// reference mesh.  Local coordinates are those of T_{k-1}.
RefMap reference_map_ve(int i, const std::array<Point, 4>& t_km1_pts, int k,
                        const EdgeFrame& frame, const RefTetShape& shape, double kappa_e);

/// Largest distance between mapped tet vertices and the reference tet's,
/// after pairing on-edge vertices by z and off-edge vertices by slot.
/// Used to verify that the maps reproduce their targets.
double map_image_error(const RefMap& map, const std::array<Point, 4>& tet_pts,
                       const Point& local_origin, const EdgeFrame& frame,
                       const std::array<Point, 4>& target);

// ---------------------------------------------------------------------------
// Mesh hierarchies, layers, and hierarchy-based map lookups.

/// Meshes from level 0 to the given one, via parent links.
std::vector<const Mesh*> hierarchy_of(const Mesh& fine);

enum class LayerKind { None, Vertex, Edge, EdgeVertex };

struct LayerIndex {
    std::int64_t initial_tet = -1;
    int layer = -1;  // 0..n
    LayerKind kind = LayerKind::None;
};

/// Layer assignment for every tetrahedron of the finest mesh.  Membership is
/// recorded from the refinement step whose cut created the layer, read off
/// the ancestry slots, not recovered geometrically.
std::vector<LayerIndex> mesh_layers(const std::vector<const Mesh*>& hierarchy);

/// Walk up while the ancestor stays type E; returns (level, index) of the
/// first E-tetrahedron of the chain.
std::pair<int, std::int64_t> e_chain_root(const std::vector<const Mesh*>& hierarchy, int level,
                                          std::int64_t tet);

/// VE ancestry start: the level k <= i such that the ancestor at k is VE and
/// its parent at k-1 is an E-tetrahedron.  Throws AncestryError when the VE
/// chain starts from a non-E parent.
std::pair<int, std::int64_t> ve_chain_start(const std::vector<const Mesh*>& hierarchy, int level,
                                            std::int64_t tet);

// ---------------------------------------------------------------------------
// Mesh quality.

/// Largest interior angle over all triangular faces, in radians.
double max_face_angle(const Mesh& mesh);

/// Number of similarity classes via a canonical shape signature (sorted edge
/// ratios and sorted dihedral angles, merged at the given quantum).
int similarity_classes(const Mesh& mesh, double quantum = 1e-9);

struct QualityRow {
    int level = 0;
    double max_angle_deg = 0.0;
    int similarity_classes = 0;
    double max_cT = 0.0;
    double max_b1 = 0.0;
    double max_b2 = 0.0;
};

/// Per-level quality table over a hierarchy: c_T over E/EV tets (frames taken
/// from their chain roots) and shear bounds from the e/ev reference maps.
std::vector<QualityRow> quality_table(const std::vector<const Mesh*>& hierarchy,
                                      const SingularSet& S);

void write_quality_csv(const std::string& path, const std::vector<QualityRow>& rows);

}  // namespace gradtet::shape

#endif
