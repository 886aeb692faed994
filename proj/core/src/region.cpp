#include "gradtet/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gradtet/errors.hpp"

namespace gradtet {

double distance_rho(const Point& p, const SingularEntity& entity) {
    const double d = entity.kind == EntityKind::Vertex ? norm(p - entity.a)
                                                       : point_line_distance(p, entity.a, entity.b);
    if (d < 1e-300) throw AtSingularity("distance evaluated on the singular entity");
    return d;
}

double angular_distance(const Point& p, const SingularEntity& vertex, const SingularEntity& edge) {
    const double rv = norm(p - vertex.a);
    if (rv <= 0.0) throw AtSingularity("angular distance needs rho_v > 0");
    return point_line_distance(p, edge.a, edge.b) / rv;
}

namespace {

// 1/3 of the least separation between singular vertices; edge lengths keep the
// radius domain-scaled when there are fewer than two vertices.
double default_vertex_radius(const SingularSet& S) {
    double sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < S.n_vertices(); ++i)
        for (int j = i + 1; j < S.n_vertices(); ++j)
            sep = std::min(sep, norm(S.entity(i).a - S.entity(j).a));
    for (int e = S.n_vertices(); e < S.size(); ++e)
        sep = std::min(sep, norm(S.entity(e).b - S.entity(e).a));
    return std::isfinite(sep) ? sep / 3.0 : 0.0;
}

double default_edge_radius(const SingularSet& S) {
    double sep = std::numeric_limits<double>::infinity();
    auto touching = [&](int i, int j) {
        const auto &a = S.entity(i), &b = S.entity(j);
        const double tol = 1e-12;
        return almost_equal(a.a, b.a, tol) || almost_equal(a.a, b.b, tol) ||
               almost_equal(a.b, b.a, tol) || almost_equal(a.b, b.b, tol);
    };
    for (int i = S.n_vertices(); i < S.size(); ++i) {
        for (int j = i + 1; j < S.size(); ++j) {
            if (touching(i, j)) continue;
            // Separation of disjoint edges, sampled at endpoints against the
            // other segment (exact for the axis-aligned benchmark domains).
            const auto &a = S.entity(i), &b = S.entity(j);
            double d = std::min(std::min(point_segment_distance(a.a, b.a, b.b),
                                         point_segment_distance(a.b, b.a, b.b)),
                                std::min(point_segment_distance(b.a, a.a, a.b),
                                         point_segment_distance(b.b, a.a, a.b)));
            sep = std::min(sep, d);
        }
        sep = std::min(sep, norm(S.entity(i).b - S.entity(i).a));
    }
    return std::isfinite(sep) ? sep / 3.0 : 0.0;
}

}  // namespace

DomainDecomposition::DomainDecomposition(SingularSet S, RegionConfig cfg)
    : S_(std::move(S)), cfg_(cfg) {
    if (cfg_.vertex_radius <= 0.0) cfg_.vertex_radius = default_vertex_radius(S_);
    if (cfg_.edge_radius <= 0.0) cfg_.edge_radius = default_edge_radius(S_);
    if (!(cfg_.aperture > 0.0)) throw ConfigError("aperture must be positive");
    for (int i = 0; i < S_.n_vertices(); ++i)
        for (int j = 0; j < S_.n_vertices(); ++j)
            if (i != j && norm(S_.entity(i).a - S_.entity(j).a) <= cfg_.vertex_radius)
                throw ConfigError("a vertex ball contains another singular vertex");
}

RegionTag DomainDecomposition::classify(const Point& p) const {
    for (int v = 0; v < S_.n_vertices(); ++v) {
        const double rv = norm(p - S_.entity(v).a);
        if (rv >= cfg_.vertex_radius) continue;
        int best_edge = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int e : S_.edges_of_vertex(v)) {
            const double rev = point_line_distance(p, S_.entity(e).a, S_.entity(e).b) / rv;
            if (rev < best) {
                best = rev;
                best_edge = e;
            }
        }
        if (best_edge >= 0 && best < cfg_.aperture)
            return {RegionKind::EdgeNearVertex, v, best_edge};
        return {RegionKind::VertexCore, v, -1};
    }
    int best_edge = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int e = S_.n_vertices(); e < S_.size(); ++e) {
        const double d = point_segment_distance(p, S_.entity(e).a, S_.entity(e).b);
        if (d < best) {
            best = d;
            best_edge = e;
        }
    }
    if (best_edge >= 0 && best < cfg_.edge_radius) return {RegionKind::EdgeCore, -1, best_edge};
    return {RegionKind::Interior, -1, -1};
}

}  // namespace gradtet
