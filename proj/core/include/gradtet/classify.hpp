#ifndef GRADTET_CLASSIFY_HPP
#define GRADTET_CLASSIFY_HPP

#include <string>
#include <vector>

#include "gradtet/mesh.hpp"
#include "gradtet/singular_set.hpp"

namespace gradtet {

/// Result of geometric classification: the category plus the entities met and
/// the local vertex slots realizing them.
struct Classification {
    TetType type = TetType::O;
    int vertex_entity = -1;  // V, EV
    int edge_entity = -1;    // VE, E, EV
    int vertex_slot = -1;    // local index of the singular vertex (V, VE, EV)
    int edge_slot_a = -1;    // local indices of the on-edge tet edge (E, EV)
    int edge_slot_b = -1;
};

/// Classify a tetrahedron by how its closure meets the singular set
/// (initial meshes only; refined children are typed combinatorially).
/// Throws AmbiguousClassification when the intersection pattern matches none
/// of the five categories, e.g. two singular vertices or a partial edge
/// overlap -- such a mesh violates the initial-mesh conditions.
Classification classify_tet(const std::array<Point, 4>& pts, const SingularSet& S,
                            double tol = 1e-9);

/// Reorder a tetrahedron's vertices to the refinement convention for its
/// classification (singular vertex at slot 0; on-edge tet edge at slots 0,1,
/// oriented along the singular edge).  Remaining slots keep relative order.
Tet canonicalize_tet(const std::array<int, 4>& verts, const std::array<Point, 4>& pts,
                     const Classification& c, const SingularSet& S);

struct MeshViolation {
    std::int64_t tet = -1;  // offending tet, or -1 for a face/global violation
    std::string what;
};

struct ValidationReport {
    std::vector<MeshViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Check a level-0 mesh against the initial-mesh conditions: at most one
/// singular vertex and one singular edge per tet (with the vertex an endpoint
/// of that edge when both are present), type tags and vertex ordering
/// consistent with the geometry, and face conformity.  Violations are
/// reported as data, not exceptions.
ValidationReport validate_initial_mesh(const Mesh& mesh, const SingularSet& S,
                                       double tol = 1e-9);

}  // namespace gradtet

#endif
