#ifndef GRADTET_SINGULAR_SET_HPP
#define GRADTET_SINGULAR_SET_HPP

#include <vector>

#include "gradtet/geometry.hpp"

namespace gradtet {

enum class EntityKind { Vertex, Edge };

/// One element of the domain's singular set: a vertex of the polyhedron or an
/// open boundary edge (stored by its two distinct endpoints).
struct SingularEntity {
    EntityKind kind = EntityKind::Vertex;
    Point a;      // vertex location, or first edge endpoint
    Point b;      // second edge endpoint (edges only)
};

/// The singular set S: vertices listed first, then open edges, each carrying a
/// grading parameter kappa in (0, 1/2].  For every vertex the effective
/// parameter kappa_ev = min over the vertex and all touching edges is cached,
/// since the vertex-local refinement rules reuse it.
class SingularSet {
public:
    SingularSet() = default;
    SingularSet(std::vector<SingularEntity> entities, std::vector<double> kappa);

    int size() const { return static_cast<int>(entities_.size()); }
    int n_vertices() const { return n_vertices_; }
    int n_edges() const { return size() - n_vertices_; }
    bool empty() const { return entities_.empty(); }

    const SingularEntity& entity(int i) const { return entities_[i]; }
    const std::vector<SingularEntity>& entities() const { return entities_; }

    double kappa(int i) const { return kappa_[i]; }
    double kappa_ev(int vertex_entity) const { return kappa_ev_[vertex_entity]; }
    /// Index list I_v of edge entities touching the given vertex entity.
    const std::vector<int>& edges_of_vertex(int vertex_entity) const {
        return edges_of_vertex_[vertex_entity];
    }

    /// Same entities with a different kappa assignment.
    SingularSet with_kappa(std::vector<double> kappa) const {
        return SingularSet(entities_, std::move(kappa));
    }

private:
    std::vector<SingularEntity> entities_;
    std::vector<double> kappa_;
    std::vector<double> kappa_ev_;               // indexed by vertex entity id
    std::vector<std::vector<int>> edges_of_vertex_;
    int n_vertices_ = 0;
};

}  // namespace gradtet

#endif
