#ifndef GRADTET_REFINE_HPP
#define GRADTET_REFINE_HPP

#include <memory>
#include <optional>

#include "gradtet/mesh.hpp"
#include "gradtet/singular_set.hpp"

namespace gradtet {

/// Split parameter t for the new node x_kl = (1-t)*x_k + t*x_l on edge
/// (k,l), 0 <= k < l <= 3, of a tetrahedron of the given type:
///   O : midpoints everywhere.
///   V : t = kappa_ev on edges from x0, midpoints elsewhere.
///   VE: t = kappa_e  on edges from x0, midpoints elsewhere.
///   E : t = kappa_e for k in {0,1}, l in {2,3}; midpoints on (0,1), (2,3).
///   EV: t = kappa_ev on (0,l), t = kappa_e on (1,l) for l in {2,3};
///       t = kappa_v on (0,1); midpoint on (2,3).
/// Throws MissingParameter when the type needs a parameter not supplied.
double edge_ratio(TetType type, int k, int l, std::optional<double> kappa_v,
                  std::optional<double> kappa_e, std::optional<double> kappa_ev);

/// Vertex slots of the eight children in terms of the parent corners (0..3)
/// and edge nodes (4=x01, 5=x02, 6=x03, 7=x12, 8=x13, 9=x23).  The octahedron
/// is cut into four tetrahedra along the x02-x13 diagonal.  Child vertex
/// order is load-bearing: the diagonal of every later refinement is read off
/// slots (1,3), and only this ordering keeps repeated refinement inside the
/// three similarity classes per initial shape.  Corner children therefore
/// carry the classical ordering (x01,x1,x12,x13), which also keeps slot 0 of
/// every on-edge child the vertex nearer the chain's x0.
inline constexpr int kChildSlots[8][4] = {
    {0, 4, 5, 6}, {4, 1, 7, 8}, {5, 7, 2, 9}, {6, 8, 9, 3},
    {4, 5, 6, 8}, {4, 5, 7, 8}, {5, 6, 8, 9}, {5, 7, 8, 9},
};

/// Child types per parent type (same order as kChildSlots):
///   O  -> 8 x O
///   V  -> V at the x0 child, 7 x O
///   VE -> VE at the x0 child, 7 x O
///   E  -> E at the x0 and x1 children, VE at the two octahedron children
///         containing x01, 4 x O
///   EV -> EV at the x0 child, E at the x1 child, VE at the two octahedron
///         children containing x01, 4 x O
const std::array<TetType, 8>& child_types(TetType parent);

/// Type tag, entity references and edge orientation of child `slot` of a
/// parent tetrahedron (pure bookkeeping, no geometry).
Tet child_tet_tags(const Tet& parent, int slot);

/// Split parameters for the six edges of `tet`, in slot order x01..x23,
/// looked up from the singular set via the tet's entity references.
std::array<double, 6> split_params(const Tet& tet, const SingularSet& S);

/// Refine a single tetrahedron in isolation: the six new nodes are appended
/// to `points` (no deduplication) and the eight children returned in the
/// fixed order above.  Throws DegenerateChild if a child's volume falls below
/// 1e-14 of the parent's.
std::array<Tet, 8> refine_tet(const Tet& tet, std::vector<Point>& points, const SingularSet& S);

/// Refine every tetrahedron of the mesh once.  New nodes are deduplicated by
/// the provenance key (smaller parent id, larger parent id, split parameter
/// quantized at 1e-12); two tets requesting different split parameters on a
/// shared edge raise ConformityBreak.  Boundary facet masks propagate to a
/// new node as the intersection of its parents' masks.
std::shared_ptr<const Mesh> refine_mesh(std::shared_ptr<const Mesh> mesh, const SingularSet& S);

/// Convenience: n successive refinements.
std::shared_ptr<const Mesh> refine_mesh(std::shared_ptr<const Mesh> mesh, const SingularSet& S,
                                        int n);

}  // namespace gradtet

#endif
