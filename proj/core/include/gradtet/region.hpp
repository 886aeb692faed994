#ifndef GRADTET_REGION_HPP
#define GRADTET_REGION_HPP

#include <optional>
#include <vector>

#include "gradtet/geometry.hpp"
#include "gradtet/singular_set.hpp"

namespace gradtet {

/// Distance to a singular entity: Euclidean distance to a vertex, or distance
/// to the line supporting an edge.  Throws AtSingularity when evaluated on
/// the entity itself (quadrature points never are).
double distance_rho(const Point& p, const SingularEntity& entity);

/// Angular distance rho_{e,v} = rho_e / rho_v near a vertex.
double angular_distance(const Point& p, const SingularEntity& vertex, const SingularEntity& edge);

/// The four components of the domain decomposition.
enum class RegionKind {
    VertexCore,      // near a vertex, away from its edges      (O_v^o)
    EdgeNearVertex,  // near a vertex, inside an edge sector    (O_e^v)
    EdgeCore,        // near an edge, away from vertices        (O_e^o)
    Interior,        // away from the singular set              (Omega^o)
};

struct RegionTag {
    RegionKind kind = RegionKind::Interior;
    int vertex_entity = -1;
    int edge_entity = -1;
};

struct RegionConfig {
    /// Vertex ball radius; <= 0 selects 1/3 of the least separation between
    /// singular vertices (falling back to edge lengths when needed).
    double vertex_radius = 0.0;
    /// Edge cylinder radius; <= 0 selects the analogous 1/3 rule for edges.
    double edge_radius = 0.0;
    /// A point in a vertex ball belongs to the edge sector when
    /// rho_{e,v} < aperture.
    double aperture = 0.5;
};

/// Point classifier for the domain decomposition around the singular set.
/// Vertex balls are tested first, then edge cylinders; the closure of a
/// vertex ball must not contain another singular vertex (ConfigError).
class DomainDecomposition {
public:
    DomainDecomposition(SingularSet S, RegionConfig cfg = {});

    RegionTag classify(const Point& p) const;

    double vertex_radius() const { return cfg_.vertex_radius; }
    double edge_radius() const { return cfg_.edge_radius; }

private:
    SingularSet S_;
    RegionConfig cfg_;
};

}  // namespace gradtet

#endif
