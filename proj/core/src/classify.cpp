#include "gradtet/classify.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gradtet/errors.hpp"

namespace gradtet {

namespace {

struct EdgeHit {
    int entity = -1;
    int slot_a = -1, slot_b = -1;  // tet edge realizing the overlap
};

struct VertexOnEdge {
    int entity = -1;
    int slot = -1;
    double param = 0.0;  // position along the edge, in (0,1)
};

std::string slot_list(const std::array<Point, 4>& pts) {
    std::ostringstream os;
    for (const auto& p : pts) os << "(" << p.x << "," << p.y << "," << p.z << ") ";
    return os.str();
}

}  // namespace

Classification classify_tet(const std::array<Point, 4>& pts, const SingularSet& S, double tol) {
    const double vol = tet_volume(pts[0], pts[1], pts[2], pts[3]);
    if (vol <= tol * tol * tol)
        throw AmbiguousClassification("degenerate tetrahedron " + slot_list(pts));

    // Singular vertices met by the closure.  A domain vertex inside the
    // closure must be a vertex of the tet, otherwise the mesh is broken.
    std::vector<std::pair<int, int>> vertex_hits;  // (entity, slot)
    for (int e = 0; e < S.n_vertices(); ++e) {
        const Point& v = S.entity(e).a;
        int slot = -1;
        for (int s = 0; s < 4; ++s)
            if (norm(pts[s] - v) <= tol) slot = s;
        if (slot >= 0) {
            vertex_hits.emplace_back(e, slot);
        } else if (point_in_tet(v, pts, tol)) {
            throw AmbiguousClassification("singular vertex inside a tetrahedron closure "
                                          "without being one of its vertices");
        }
    }

    // Singular edges: clip each open edge against the closure.
    std::vector<EdgeHit> edge_hits;
    std::vector<VertexOnEdge> interior_vertex_hits;
    for (int e = S.n_vertices(); e < S.size(); ++e) {
        const auto& ent = S.entity(e);
        const double elen = norm(ent.b - ent.a);
        auto clip = clip_segment_to_tet(ent.a, ent.b, pts, tol / elen);
        if (!clip) continue;
        const double span = (clip->second - clip->first) * elen;
        if (span > tol) {
            // Positive-length overlap: it must be exactly a tet edge.
            int sa = -1, sb = -1;
            const Point qa = lerp(ent.a, ent.b, clip->first);
            const Point qb = lerp(ent.a, ent.b, clip->second);
            for (int s = 0; s < 4; ++s) {
                if (norm(pts[s] - qa) <= tol) sa = s;
                if (norm(pts[s] - qb) <= tol) sb = s;
            }
            if (sa < 0 || sb < 0 || sa == sb)
                throw AmbiguousClassification(
                    "singular edge crosses a tetrahedron without lying on one of its edges");
            edge_hits.push_back({e, sa, sb});
        } else {
            // Point contact.  Only an interior point of the open edge makes the
            // contact singular; endpoint grazes are not in S.
            const double tmid = 0.5 * (clip->first + clip->second);
            if (tmid * elen <= tol || (1.0 - tmid) * elen <= tol) continue;
            int slot = -1;
            const Point q = lerp(ent.a, ent.b, tmid);
            for (int s = 0; s < 4; ++s)
                if (norm(pts[s] - q) <= tol) slot = s;
            if (slot < 0)
                throw AmbiguousClassification(
                    "singular edge touches a tetrahedron at a non-vertex point");
            interior_vertex_hits.push_back({e, slot, tmid});
        }
    }

    if (vertex_hits.size() > 1)
        throw AmbiguousClassification("tetrahedron contains more than one singular vertex");
    if (edge_hits.size() > 1)
        throw AmbiguousClassification("tetrahedron contains more than one singular edge");

    Classification c;
    if (!edge_hits.empty()) {
        const auto& eh = edge_hits[0];
        // A vertex lying on the carried edge does not count as a singular
        // vertex of this tet; any interior-vertex hit must be on that edge.
        for (const auto& ivh : interior_vertex_hits)
            if (ivh.entity != eh.entity)
                throw AmbiguousClassification(
                    "tetrahedron meets one singular edge and the interior of another");
        c.edge_entity = eh.entity;
        c.edge_slot_a = eh.slot_a;
        c.edge_slot_b = eh.slot_b;
        if (!vertex_hits.empty()) {
            const auto [ve, vslot] = vertex_hits[0];
            if (vslot != eh.slot_a && vslot != eh.slot_b)
                throw AmbiguousClassification(
                    "singular vertex is not an endpoint of the tetrahedron's singular edge");
            const auto& ent = S.entity(eh.entity);
            const Point& v = S.entity(ve).a;
            if (!(almost_equal(ent.a, v, tol) || almost_equal(ent.b, v, tol)))
                throw AmbiguousClassification("singular vertex does not join the singular edge");
            c.type = TetType::EV;
            c.vertex_entity = ve;
            c.vertex_slot = vslot;
        } else {
            c.type = TetType::E;
        }
        return c;
    }

    if (!vertex_hits.empty()) {
        if (!interior_vertex_hits.empty())
            throw AmbiguousClassification(
                "tetrahedron meets a singular vertex and a singular edge it does not contain");
        c.type = TetType::V;
        c.vertex_entity = vertex_hits[0].first;
        c.vertex_slot = vertex_hits[0].second;
        return c;
    }

    if (!interior_vertex_hits.empty()) {
        if (interior_vertex_hits.size() > 1)
            throw AmbiguousClassification("tetrahedron touches singular edges at two points");
        c.type = TetType::VE;
        c.edge_entity = interior_vertex_hits[0].entity;
        c.vertex_slot = interior_vertex_hits[0].slot;
        return c;
    }

    c.type = TetType::O;
    return c;
}

Tet canonicalize_tet(const std::array<int, 4>& verts, const std::array<Point, 4>& pts,
                     const Classification& c, const SingularSet& S) {
    Tet t;
    t.type = c.type;
    t.sv = c.vertex_entity;
    t.se = c.edge_entity;

    std::array<int, 4> order{0, 1, 2, 3};
    switch (c.type) {
        case TetType::O:
            break;
        case TetType::V:
        case TetType::VE: {
            order = {c.vertex_slot, -1, -1, -1};
            int k = 1;
            for (int s = 0; s < 4; ++s)
                if (s != c.vertex_slot) order[k++] = s;
            break;
        }
        case TetType::E:
        case TetType::EV: {
            int s0 = c.edge_slot_a, s1 = c.edge_slot_b;
            if (c.type == TetType::EV) {
                if (c.vertex_slot == s1) std::swap(s0, s1);
            } else {
                // Orient the on-edge pair along the singular edge's a->b
                // direction so initial E-tets start with edge_forward = true.
                const auto& ent = S.entity(c.edge_entity);
                if (line_projection_param(pts[s0], ent.a, ent.b) >
                    line_projection_param(pts[s1], ent.a, ent.b))
                    std::swap(s0, s1);
            }
            order = {s0, s1, -1, -1};
            int k = 2;
            for (int s = 0; s < 4; ++s)
                if (s != s0 && s != s1) order[k++] = s;
            break;
        }
    }
    for (int i = 0; i < 4; ++i) t.v[i] = verts[order[i]];
    return t;
}

ValidationReport validate_initial_mesh(const Mesh& mesh, const SingularSet& S, double tol) {
    ValidationReport report;
    if (mesh.level != 0)
        report.violations.push_back({-1, "mesh is not a level-0 mesh"});

    for (std::int64_t i = 0; i < mesh.n_tets(); ++i) {
        const auto& T = mesh.tets[i];
        const auto pts = mesh.tet_points(i);
        Classification c;
        try {
            c = classify_tet(pts, S, tol);
        } catch (const AmbiguousClassification& e) {
            report.violations.push_back({i, e.what()});
            continue;
        }
        if (c.type != T.type) {
            report.violations.push_back(
                {i, std::string("type tag ") + to_string(T.type) +
                        " disagrees with geometric classification " + to_string(c.type)});
            continue;
        }
        // Slot conventions.
        switch (T.type) {
            case TetType::O:
                break;
            case TetType::V:
            case TetType::VE:
                if (c.vertex_slot != 0)
                    report.violations.push_back({i, "singular vertex is not at slot 0"});
                break;
            case TetType::E:
            case TetType::EV: {
                const bool edge_ok = (c.edge_slot_a == 0 && c.edge_slot_b == 1) ||
                                     (c.edge_slot_a == 1 && c.edge_slot_b == 0);
                if (!edge_ok)
                    report.violations.push_back({i, "singular edge is not at slots (0,1)"});
                if (T.type == TetType::EV && c.vertex_slot != 0)
                    report.violations.push_back({i, "singular vertex is not at slot 0"});
                break;
            }
        }
        if (T.type != TetType::O) {
            if ((c.vertex_entity >= 0 && c.vertex_entity != T.sv) ||
                (c.edge_entity >= 0 && c.edge_entity != T.se))
                report.violations.push_back({i, "entity references disagree with geometry"});
        }
    }

    // Face conformity: every sorted vertex triple appears in one tet
    // (boundary) or two (interior).
    static constexpr int faces[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    std::map<std::array<int, 3>, std::pair<int, std::int64_t>> face_count;  // count, owner
    for (std::int64_t t = 0; t < mesh.n_tets(); ++t) {
        const auto& T = mesh.tets[t];
        for (const auto& f : faces) {
            std::array<int, 3> key{T.v[f[0]], T.v[f[1]], T.v[f[2]]};
            std::sort(key.begin(), key.end());
            auto [it, inserted] = face_count.try_emplace(key, std::make_pair(0, t));
            ++it->second.first;
        }
    }
    for (const auto& [key, info] : face_count) {
        if (info.first > 2) {
            std::ostringstream os;
            os << "face (" << key[0] << "," << key[1] << "," << key[2] << ") shared by "
               << info.first << " tets";
            report.violations.push_back({-1, os.str()});
        } else if (info.first == 1) {
            // An unmatched face whose centroid lies inside another tet's
            // closure signals a partial (half-face) overlap.  The level-0
            // meshes are small, so the quadratic sweep is cheap.
            const Point c = (mesh.points[key[0]] + mesh.points[key[1]] + mesh.points[key[2]]) / 3.0;
            for (std::int64_t t = 0; t < mesh.n_tets(); ++t) {
                if (t == info.second) continue;
                if (point_in_tet(c, mesh.tet_points(t), 1e-9)) {
                    std::ostringstream os;
                    os << "face (" << key[0] << "," << key[1] << "," << key[2]
                       << ") overlaps tet " << t << " without being shared";
                    report.violations.push_back({t, os.str()});
                    break;
                }
            }
        }
    }
    return report;
}

}  // namespace gradtet
