#include "gradtet/domains.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gradtet/classify.hpp"
#include "gradtet/conformity.hpp"
#include "gradtet/errors.hpp"
#include "gradtet/geometry.hpp"

namespace gradtet::domains {

namespace {

constexpr double kTol = 1e-12;

SingularSet placeholder_set(const std::vector<SingularEntity>& entities) {
    return SingularSet(entities, std::vector<double>(entities.size(), 0.5));
}

/// Classify raw vertex tuples geometrically and store them in canonical order.
Mesh finish_mesh(std::vector<Point> points, const std::vector<std::array<int, 4>>& raw_tets,
                 const std::vector<SingularEntity>& entities) {
    const SingularSet S = placeholder_set(entities);
    Mesh m;
    m.points = std::move(points);
    m.provenance.assign(m.points.size(), NodeProvenance{});
    for (const auto& verts : raw_tets) {
        const std::array<Point, 4> pts{m.points[verts[0]], m.points[verts[1]],
                                       m.points[verts[2]], m.points[verts[3]]};
        const Classification c = classify_tet(pts, S, 1e-9);
        m.tets.push_back(canonicalize_tet(verts, pts, c, S));
    }
    return m;
}

void must_be_valid(const Mesh& mesh, const std::vector<SingularEntity>& entities,
                   const char* name) {
    const SingularSet S = placeholder_set(entities);
    const auto report = validate_initial_mesh(mesh, S);
    if (!report.ok())
        throw std::logic_error(std::string("embedded ") + name + " mesh failed validation: " +
                               report.violations.front().what);
    const auto conf = check_conformity(mesh);
    if (!conf.ok())
        throw std::logic_error(std::string("embedded ") + name + " mesh is not conforming: " +
                               conf.violations.front().what);

    // Every singular entity must be covered by tets of the matching type.
    const int nv = S.n_vertices();
    for (int v = 0; v < nv; ++v) {
        bool covered = false;
        for (const auto& T : mesh.tets)
            if ((T.type == TetType::V || T.type == TetType::EV) && T.sv == v) covered = true;
        if (!covered)
            throw std::logic_error(std::string("embedded ") + name +
                                   " mesh: singular vertex not covered by V/EV tets");
    }
    for (int e = nv; e < S.size(); ++e) {
        const auto& ent = S.entity(e);
        std::vector<std::pair<double, double>> spans;
        for (const auto& T : mesh.tets) {
            if ((T.type == TetType::E || T.type == TetType::EV) && T.se == e) {
                double t0 = line_projection_param(mesh.points[T.v[0]], ent.a, ent.b);
                double t1 = line_projection_param(mesh.points[T.v[1]], ent.a, ent.b);
                if (t0 > t1) std::swap(t0, t1);
                spans.emplace_back(t0, t1);
            }
        }
        std::sort(spans.begin(), spans.end());
        double reach = 0.0;
        for (const auto& [t0, t1] : spans) {
            if (t0 > reach + 1e-9) break;
            reach = std::max(reach, t1);
        }
        if (reach < 1.0 - 1e-9)
            throw std::logic_error(std::string("embedded ") + name +
                                   " mesh: singular edge not fully covered by E/EV tets");
    }
}

DomainSpec build_prism() {
    DomainSpec dom;
    dom.name = "prism";
    dom.eta_edge = 2.0 / 3.0;
    dom.eta_vertex = 13.0 / 6.0;
    dom.volume = 0.75;

    const Point v_bot{0.5, 0.5, 0.0};
    const Point v_top{0.5, 0.5, 1.0};
    dom.entities = {
        {EntityKind::Vertex, v_bot, {}},
        {EntityKind::Vertex, v_top, {}},
        {EntityKind::Edge, v_bot, v_top},
    };

    // Pentagon corners and the fan triangles from the apex.
    const double corners[5][2] = {{1, 0}, {1, 1}, {0, 1}, {0, 0}, {0.5, 0.5}};
    const int apex = 4;
    const int fan[3][2] = {{0, 1}, {1, 2}, {2, 3}};  // (apex, c1, c2) triangles
    const double zs[3] = {0.0, 0.5, 1.0};

    std::vector<Point> points;
    auto pid = [&](int corner, int zlevel) { return zlevel * 5 + corner; };
    for (int z = 0; z < 3; ++z)
        for (int c = 0; c < 5; ++c)
            points.push_back({corners[c][0], corners[c][1], zs[z]});

    std::vector<std::array<int, 4>> tets;
    for (const auto& tri : fan) {
        const int p = tri[0], q = tri[1];
        // Lower slab: edge tet joins the bottom vertex.
        {
            const int a0 = pid(apex, 0), a1 = pid(apex, 1);
            const int p0 = pid(p, 0), q0 = pid(q, 0), p1 = pid(p, 1), q1 = pid(q, 1);
            tets.push_back({a0, a1, p0, q0});
            tets.push_back({a1, p0, q0, p1});
            tets.push_back({a1, q0, p1, q1});
        }
        // Upper slab, mirrored: edge tet joins the top vertex.
        {
            const int am = pid(apex, 1), at = pid(apex, 2);
            const int pm = pid(p, 1), qm = pid(q, 1), pt = pid(p, 2), qt = pid(q, 2);
            tets.push_back({at, am, pt, qt});
            tets.push_back({am, pt, qt, pm});
            tets.push_back({am, qt, pm, qm});
        }
    }

    Mesh mesh = finish_mesh(std::move(points), tets, dom.entities);

    // Boundary: 5 lateral quads over the pentagon edges (two of them are the
    // notch faces through the reentrant edge) plus the two caps, fanned into
    // convex triangles.
    const int loop[6] = {0, 1, 2, 3, apex, 0};
    std::vector<Facet> facets;
    auto at_z = [&](int c, double z) { return Point{corners[c][0], corners[c][1], z}; };
    for (int i = 0; i < 5; ++i)
        facets.push_back({{at_z(loop[i], 0), at_z(loop[i + 1], 0), at_z(loop[i + 1], 1),
                           at_z(loop[i], 1)}});
    for (double z : {0.0, 1.0})
        for (const auto& tri : fan)
            facets.push_back({{at_z(apex, z), at_z(tri[0], z), at_z(tri[1], z)}});
    dom.facets = std::move(facets);

    assign_boundary_facets(mesh, dom.facets, kTol);
    must_be_valid(mesh, dom.entities, "prism");
    dom.level0 = std::make_shared<Mesh>(std::move(mesh));
    return dom;
}

DomainSpec build_fichera() {
    DomainSpec dom;
    dom.name = "fichera";
    dom.eta_edge = 2.0 / 3.0;
    dom.eta_vertex = 0.954;
    dom.volume = 7.0;

    const Point origin{0, 0, 0};
    dom.entities = {
        {EntityKind::Vertex, origin, {}},
        {EntityKind::Edge, origin, {1, 0, 0}},
        {EntityKind::Edge, origin, {0, 1, 0}},
        {EntityKind::Edge, origin, {0, 0, 1}},
    };

    // Grid points of the 3x3x3 lattice {-1,0,1}^3 except the removed corner.
    std::vector<Point> points;
    std::vector<int> grid_id(27, -1);
    auto gidx = [](int i, int j, int k) { return (i * 3 + j) * 3 + k; };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (i == 2 && j == 2 && k == 2) continue;  // (1,1,1)
                grid_id[gidx(i, j, k)] = static_cast<int>(points.size());
                points.push_back({i - 1.0, j - 1.0, k - 1.0});
            }

    // Six-tet cube subdivision along vertex permutation paths that start at
    // the cube's origin corner (every octant cube has the corner vertex).
    // All shared faces then carry the origin-to-opposite diagonal, and every
    // edge emanating from a reentrant edge's far endpoint is shared only by
    // tets grading it the same way, so the grading assignment is conforming.
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<std::array<int, 4>> tets;
    for (int ci = 0; ci < 2; ++ci)
        for (int cj = 0; cj < 2; ++cj)
            for (int ck = 0; ck < 2; ++ck) {
                if (ci == 1 && cj == 1 && ck == 1) continue;  // removed octant
                // Step away from the origin corner (grid index 1 per axis).
                const int step[3] = {ci == 1 ? 1 : -1, cj == 1 ? 1 : -1, ck == 1 ? 1 : -1};
                for (const auto& p : perms) {
                    int c[3] = {1, 1, 1};
                    std::array<int, 4> t;
                    t[0] = grid_id[gidx(c[0], c[1], c[2])];
                    for (int s = 0; s < 3; ++s) {
                        c[p[s]] += step[p[s]];
                        t[s + 1] = grid_id[gidx(c[0], c[1], c[2])];
                    }
                    tets.push_back(t);
                }
            }

    Mesh mesh = finish_mesh(std::move(points), tets, dom.entities);

    std::vector<Facet> facets;
    // Full squares on the -1 sides.
    facets.push_back({{{-1, -1, -1}, {-1, 1, -1}, {-1, 1, 1}, {-1, -1, 1}}});
    facets.push_back({{{-1, -1, -1}, {1, -1, -1}, {1, -1, 1}, {-1, -1, 1}}});
    facets.push_back({{{-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1}}});
    // L-shaped outer faces on the +1 sides, as two overlapping rectangles.
    facets.push_back({{{1, -1, -1}, {1, 0, -1}, {1, 0, 1}, {1, -1, 1}}});
    facets.push_back({{{1, -1, -1}, {1, 1, -1}, {1, 1, 0}, {1, -1, 0}}});
    facets.push_back({{{-1, 1, -1}, {0, 1, -1}, {0, 1, 1}, {-1, 1, 1}}});
    facets.push_back({{{-1, 1, -1}, {1, 1, -1}, {1, 1, 0}, {-1, 1, 0}}});
    facets.push_back({{{-1, -1, 1}, {0, -1, 1}, {0, 1, 1}, {-1, 1, 1}}});
    facets.push_back({{{-1, -1, 1}, {1, -1, 1}, {1, 0, 1}, {-1, 0, 1}}});
    // Inner faces of the removed octant.
    facets.push_back({{{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {0, 0, 1}}});
    facets.push_back({{{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {0, 0, 1}}});
    facets.push_back({{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}});
    dom.facets = std::move(facets);

    assign_boundary_facets(mesh, dom.facets, kTol);
    must_be_valid(mesh, dom.entities, "fichera");
    dom.level0 = std::make_shared<Mesh>(std::move(mesh));
    return dom;
}

}  // namespace

SingularSet DomainSpec::with_grading(double kappa_vertex, double kappa_edge) const {
    std::vector<double> kappa;
    for (const auto& e : entities)
        kappa.push_back(e.kind == EntityKind::Vertex ? kappa_vertex : kappa_edge);
    return SingularSet(entities, std::move(kappa));
}

DomainSpec build_domain(const std::string& name) {
    if (name == "prism") return build_prism();
    if (name == "fichera") return build_fichera();
    throw OutOfRange("unknown domain '" + name + "' (expected 'prism' or 'fichera')");
}

}  // namespace gradtet::domains
