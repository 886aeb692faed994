#ifndef GRADTET_DOMAINS_HPP
#define GRADTET_DOMAINS_HPP

#include <memory>
#include <string>
#include <vector>

#include "gradtet/mesh.hpp"
#include "gradtet/singular_set.hpp"

namespace gradtet::domains {

/// An embedded model domain: boundary facets, singular set, a validated
/// level-0 mesh, and the regularity thresholds used to discuss grading
/// choices in reports.
struct DomainSpec {
    std::string name;
    std::vector<SingularEntity> entities;  // vertices first, then edges
    std::shared_ptr<const Mesh> level0;
    std::vector<Facet> facets;
    double eta_edge = 0.0;    // regularity index of the reentrant edges
    double eta_vertex = 0.0;  // regularity index of the singular vertices
    double volume = 0.0;

    /// Singular set with one grading parameter per vertex / edge entity.
    SingularSet with_grading(double kappa_vertex, double kappa_edge) const;
};

/// `prism`: the unit-height prism over the square minus the triangle
/// ((0,0),(1,0),(0.5,0.5)); the reentrant edge {(0.5,0.5)} x (0,1) and its two
/// endpoints form the singular set.  The pentagon is fanned from (0.5,0.5)
/// into 3 triangles, extruded in two z-slabs and each sub-prism split into 3
/// tets: 18 tets, each slab's edge tets joining one endpoint vertex.
///
/// `fichera`: (-1,1)^3 minus the closed octant [0,1)^3; 7 unit cubes, each
/// split into 6 tets sharing the cube diagonal, covering the corner with V
/// tets and the three reentrant edges with EV tets: 42 tets.
///
/// Both meshes are validated at construction (initial-mesh conditions,
/// conformity, and coverage of every singular entity by matching tet types);
/// a failure is a build bug and throws std::logic_error.
DomainSpec build_domain(const std::string& name);

}  // namespace gradtet::domains

#endif
