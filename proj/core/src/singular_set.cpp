#include "gradtet/singular_set.hpp"

#include <algorithm>
#include <cmath>

#include "gradtet/errors.hpp"

namespace gradtet {

namespace {
constexpr double kPointTol = 1e-12;
}

SingularSet::SingularSet(std::vector<SingularEntity> entities, std::vector<double> kappa)
    : entities_(std::move(entities)), kappa_(std::move(kappa)) {
    if (kappa_.size() != entities_.size())
        throw ConfigError("one grading parameter per singular entity required");

    bool seen_edge = false;
    for (const auto& e : entities_) {
        if (e.kind == EntityKind::Vertex) {
            if (seen_edge) throw ConfigError("vertices must be listed before edges");
            ++n_vertices_;
        } else {
            seen_edge = true;
            if (norm(e.b - e.a) <= kPointTol)
                throw ConfigError("edge endpoints must be distinct");
        }
    }
    for (double k : kappa_)
        if (!(k > 0.0 && k <= 0.5)) throw ConfigError("kappa must lie in (0, 1/2]");

    edges_of_vertex_.assign(n_vertices_, {});
    kappa_ev_.assign(n_vertices_, 0.0);
    for (int v = 0; v < n_vertices_; ++v) {
        const Point& p = entities_[v].a;
        double kev = kappa_[v];
        for (int e = n_vertices_; e < size(); ++e) {
            const auto& ed = entities_[e];
            if (almost_equal(ed.a, p, kPointTol) || almost_equal(ed.b, p, kPointTol)) {
                edges_of_vertex_[v].push_back(e);
                kev = std::min(kev, kappa_[e]);
            }
        }
        kappa_ev_[v] = kev;
    }
}

}  // namespace gradtet
