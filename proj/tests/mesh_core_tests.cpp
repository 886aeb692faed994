#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <sstream>

#include "gradtet/classify.hpp"
#include "gradtet/conformity.hpp"
#include "gradtet/domains.hpp"
#include "gradtet/errors.hpp"
#include "gradtet/mesh_io.hpp"
#include "gradtet/refine.hpp"
#include "test_support.hpp"

using namespace gradtet;
using namespace gradtet::testing;

namespace {

std::map<TetType, int> census(const std::array<Tet, 8>& children) {
    std::map<TetType, int> c;
    for (const auto& t : children) ++c[t.type];
    return c;
}

std::map<TetType, int> census(const Mesh& m) {
    std::map<TetType, int> c;
    for (const auto& t : m.tets) ++c[t.type];
    return c;
}

}  // namespace

TEST_CASE("edge_ratio implements the five refinement rules") {
    // Rule I: all midpoints.
    for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l)
            CHECK(edge_ratio(TetType::O, k, l, {}, {}, {}) == 0.5);

    // Rules II/III: kappa on edges from x0 (kappa_ev for V, kappa_e for VE).
    CHECK(edge_ratio(TetType::V, 0, 2, {}, {}, 0.3) == 0.3);
    CHECK(edge_ratio(TetType::V, 1, 2, {}, {}, 0.3) == 0.5);
    CHECK(edge_ratio(TetType::VE, 0, 1, {}, 0.25, {}) == 0.25);
    CHECK(edge_ratio(TetType::VE, 2, 3, {}, 0.25, {}) == 0.5);

    // Rule IV: kappa_e toward the off-edge vertices, midpoints along (0,1),(2,3).
    CHECK(edge_ratio(TetType::E, 0, 2, {}, 0.2, {}) == 0.2);
    CHECK(edge_ratio(TetType::E, 1, 3, {}, 0.2, {}) == 0.2);
    CHECK(edge_ratio(TetType::E, 0, 1, {}, 0.2, {}) == 0.5);
    CHECK(edge_ratio(TetType::E, 2, 3, {}, 0.2, {}) == 0.5);

    // Rule V.
    CHECK(edge_ratio(TetType::EV, 0, 1, 0.4, 0.2, 0.2) == 0.4);
    CHECK(edge_ratio(TetType::EV, 0, 2, 0.4, 0.2, 0.15) == 0.15);
    CHECK(edge_ratio(TetType::EV, 1, 3, 0.4, 0.2, 0.15) == 0.2);
    CHECK(edge_ratio(TetType::EV, 2, 3, 0.4, 0.2, 0.15) == 0.5);

    CHECK_THROWS_AS(edge_ratio(TetType::E, 0, 2, {}, {}, {}), MissingParameter);
    CHECK_THROWS_AS(edge_ratio(TetType::EV, 0, 1, {}, 0.2, 0.2), MissingParameter);
    CHECK_THROWS_AS(edge_ratio(TetType::V, 0, 1, {}, {}, {}), MissingParameter);
}

TEST_CASE("refine_tet produces the verbatim child list") {
    auto e = make_e_tet(0.2);
    Chain c = chain_from(e.mesh);
    const auto children = chain_children(c, e.S);

    // Pool grows by six nodes in slot order x01..x23, so child tuples must
    // equal the slot table literally.
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 4; ++j) CHECK(children[i].v[j] == kChildSlots[i][j]);

    // Frozen coordinates for kappa_e = 0.2 (rule IV affine formulas).
    const Point expected[6] = {{0, 0, 0.5}, {0.2, 0, 0},   {0, 0.2, 0},
                               {0.2, 0, 0.8}, {0, 0.2, 0.8}, {0.5, 0.5, 0}};
    REQUIRE(c.pool.size() == 10);
    for (int i = 0; i < 6; ++i) {
        CHECK(c.pool[4 + i].x == doctest::Approx(expected[i].x).epsilon(1e-15));
        CHECK(c.pool[4 + i].y == doctest::Approx(expected[i].y).epsilon(1e-15));
        CHECK(c.pool[4 + i].z == doctest::Approx(expected[i].z).epsilon(1e-15));
    }
}

TEST_CASE("child type censuses match the rule table") {
    {
        auto t = make_o_tet();
        Chain c = chain_from(t.mesh);
        auto cen = census(chain_children(c, t.S));
        CHECK(cen[TetType::O] == 8);
    }
    {
        auto t = make_v_tet();
        Chain c = chain_from(t.mesh);
        auto cen = census(chain_children(c, t.S));
        CHECK(cen[TetType::V] == 1);
        CHECK(cen[TetType::O] == 7);
    }
    {
        auto t = make_ve_tet();
        Chain c = chain_from(t.mesh);
        auto cen = census(chain_children(c, t.S));
        CHECK(cen[TetType::VE] == 1);
        CHECK(cen[TetType::O] == 7);
    }
    {
        auto t = make_e_tet();
        Chain c = chain_from(t.mesh);
        const auto children = chain_children(c, t.S);
        auto cen = census(children);
        CHECK(cen[TetType::E] == 2);
        CHECK(cen[TetType::VE] == 2);
        CHECK(cen[TetType::O] == 4);
        // The E children are the x0 and x1 children; the VE children are the
        // two octahedron children containing x01 (slots 4 and 5).
        CHECK(children[0].type == TetType::E);
        CHECK(children[1].type == TetType::E);
        CHECK(children[4].type == TetType::VE);
        CHECK(children[5].type == TetType::VE);
        // Both on-edge children keep the chain orientation.
        CHECK(children[0].edge_forward);
        CHECK(children[1].edge_forward);
    }
    {
        auto t = make_ev_tet();
        Chain c = chain_from(t.mesh);
        const auto children = chain_children(c, t.S);
        auto cen = census(children);
        CHECK(cen[TetType::EV] == 1);
        CHECK(cen[TetType::E] == 1);
        CHECK(cen[TetType::VE] == 2);
        CHECK(cen[TetType::O] == 4);
        CHECK(children[0].type == TetType::EV);
        CHECK(children[1].type == TetType::E);
    }
}

TEST_CASE("child census is stable over random kappa (property)") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> kdist(0.01, 0.5);
    for (int trial = 0; trial < 50; ++trial) {
        auto t = make_ev_tet(kdist(rng), kdist(rng));
        Chain c = chain_from(t.mesh);
        auto cen = census(chain_children(c, t.S));
        CHECK(cen[TetType::EV] == 1);
        CHECK(cen[TetType::E] == 1);
        CHECK(cen[TetType::VE] == 2);
        CHECK(cen[TetType::O] == 4);
    }
}

TEST_CASE("kappa = 1/2 reduces to uniform midpoint refinement") {
    auto t = make_ev_tet(0.5, 0.5);
    Chain c = chain_from(t.mesh);
    chain_children(c, t.S);
    static constexpr int edges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int e = 0; e < 6; ++e) {
        const Point mid = lerp(c.pool[edges[e][0]], c.pool[edges[e][1]], 0.5);
        CHECK(norm(c.pool[4 + e] - mid) < 1e-15);
    }
}

TEST_CASE("classify_tet covers the five categories and rejects the rest") {
    const auto prism = domains::build_domain("prism");
    const SingularSet S = prism.with_grading(0.5, 0.2);

    // Far from all singular entities.
    CHECK(classify_tet({Point{10, 10, 10}, {11, 10, 10}, {10, 11, 10}, {10, 10, 11}}, S).type ==
          TetType::O);

    // Vertex on the interior of the prism edge, no tet edge on it.
    const auto ve =
        classify_tet({Point{0.5, 0.5, 0.5}, {1, 0.4, 0.5}, {1, 0.6, 0.4}, {1, 0.5, 0.7}}, S);
    CHECK(ve.type == TetType::VE);
    CHECK(ve.edge_entity == 2);
    CHECK(ve.vertex_slot == 0);

    // Domain vertex plus an on-edge tet edge joining it.
    const auto ev =
        classify_tet({Point{0.5, 0.5, 0}, {0.5, 0.5, 0.5}, {1, 0.4, 0}, {1, 0.6, 0}}, S);
    CHECK(ev.type == TetType::EV);
    CHECK(ev.vertex_entity == 0);
    CHECK(ev.edge_entity == 2);

    // A tet edge spanning the whole singular edge contains two singular
    // vertices: not one of the five patterns.
    CHECK_THROWS_AS(
        classify_tet({Point{0.5, 0.5, 0}, {0.5, 0.5, 1}, {1, 0.4, 0}, {1, 0.6, 0}}, S),
        AmbiguousClassification);
}

TEST_CASE("embedded domains validate cleanly") {
    for (const char* name : {"prism", "fichera"}) {
        const auto dom = domains::build_domain(name);
        const SingularSet S = dom.with_grading(0.4, 0.3);
        CHECK(validate_initial_mesh(*dom.level0, S).ok());
        CHECK(check_conformity(*dom.level0).ok());
    }
    const auto prism = domains::build_domain("prism");
    CHECK(prism.level0->n_tets() == 18);
    const auto fichera = domains::build_domain("fichera");
    CHECK(fichera.level0->n_tets() == 42);

    auto cen = census(*fichera.level0);
    CHECK(cen[TetType::V] == 24);
    CHECK(cen[TetType::EV] == 18);
    CHECK(cen[TetType::O] == 0);
    // Each reentrant edge is ringed by six EV tets (three cubes, two wedges
    // each, 270 degrees of dihedral angle).
    std::map<int, int> per_edge;
    for (const auto& t : fichera.level0->tets)
        if (t.type == TetType::EV) ++per_edge[t.se];
    CHECK(per_edge.size() == 3);
    for (const auto& [e, n] : per_edge) CHECK(n == 6);
}

TEST_CASE("validate_initial_mesh reports violations as data") {
    const auto prism = domains::build_domain("prism");
    const SingularSet S = prism.with_grading(0.5, 0.2);

    // (a) tet spanning the full singular edge: two singular vertices.
    {
        Mesh m;
        m.points = {{0.5, 0.5, 0}, {0.5, 0.5, 1}, {1, 0.4, 0}, {1, 0.6, 0}};
        m.provenance.assign(4, NodeProvenance{});
        Tet t;
        t.v = {0, 1, 2, 3};
        t.type = TetType::EV;
        t.sv = 0;
        t.se = 2;
        m.tets.push_back(t);
        const auto rep = validate_initial_mesh(m, S);
        CHECK(!rep.ok());
    }

    // (c) two tets sharing only half a face.
    {
        Mesh m;
        m.points = {{10, 0, 0}, {11, 0, 0}, {10, 1, 0}, {10.5, 0.5, 0},
                    {10, 0, 1},  {10.4, 0.3, -1}};
        m.provenance.assign(6, NodeProvenance{});
        Tet t1;  // face (0,1,2) in the z=0 plane
        t1.v = {0, 1, 2, 4};
        Tet t2;  // shares only the half face (0,1,3), 3 = midpoint of (1,2)
        t2.v = {0, 1, 3, 5};
        m.tets = {t1, t2};
        const auto rep = validate_initial_mesh(m, SingularSet({}, {}));
        CHECK(!rep.ok());
    }
}

TEST_CASE("refine_mesh: prism refines to 144 conforming tets") {
    const auto prism = domains::build_domain("prism");
    const SingularSet S = prism.with_grading(0.5, 0.2);
    const auto fine = refine_mesh(prism.level0, S);
    CHECK(fine->n_tets() == 144);
    CHECK(check_conformity(*fine).ok());
    CHECK(fine->level == 1);

    // Node provenance exactness: coordinates equal the affine combination.
    for (int v = 0; v < fine->n_points(); ++v) {
        const auto& pr = fine->provenance[v];
        if (pr.original()) continue;
        const Point expect = lerp(fine->points[pr.a], fine->points[pr.b], pr.t);
        CHECK(norm(fine->points[v] - expect) <= 1e-12 * (1.0 + norm(expect)));
    }
}

TEST_CASE("refine_mesh census is 8^n for every type (property)") {
    const TypedTet cases[] = {make_o_tet(), make_v_tet(), make_ve_tet(), make_e_tet(),
                              make_ev_tet()};
    for (const auto& t : cases) {
        auto mesh = std::make_shared<Mesh>(t.mesh);
        std::shared_ptr<const Mesh> m = mesh;
        for (int n = 1; n <= 3; ++n) {
            m = refine_mesh(m, t.S);
            CHECK(m->n_tets() == (std::int64_t{1} << (3 * n)));
            CHECK(check_conformity(*m).ok());
        }
    }
}

TEST_CASE("geometric classification agrees with the combinatorial rule table") {
    for (const char* name : {"prism", "fichera"}) {
        const auto dom = domains::build_domain(name);
        const SingularSet S = dom.with_grading(0.4, 0.3);
        std::shared_ptr<const Mesh> m = dom.level0;
        for (int level = 1; level <= 2; ++level) {
            m = refine_mesh(m, S);
            for (std::int64_t t = 0; t < m->n_tets(); ++t) {
                const auto c = classify_tet(m->tet_points(t), S);
                REQUIRE(c.type == m->tets[t].type);
                if (c.type != TetType::O) {
                    CHECK(c.vertex_entity == m->tets[t].sv);
                    CHECK(c.edge_entity == m->tets[t].se);
                }
            }
        }
    }
}

TEST_CASE("conflicting split parameters raise ConformityBreak") {
    // Tet 0 is an E-tet grading the shared edge (0,2) at kappa_e; tet 1 is
    // tagged O and wants the midpoint.  Legal meshes never mix these.
    Mesh m;
    m.points = {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, -1, 0}};
    m.provenance.assign(5, NodeProvenance{});
    Tet e;
    e.v = {0, 1, 2, 3};
    e.type = TetType::E;
    e.se = 0;
    Tet o;
    o.v = {0, 1, 2, 4};
    o.type = TetType::O;
    m.tets = {e, o};
    SingularSet S({{EntityKind::Edge, {0, 0, 0}, {0, 0, 1}}}, {0.2});
    auto mp = std::make_shared<Mesh>(std::move(m));
    CHECK_THROWS_AS(refine_mesh(mp, S), ConformityBreak);
}

TEST_CASE("check_conformity flags hanging nodes") {
    Mesh m;
    m.points = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.5, 0, 0}};
    m.provenance.assign(4, NodeProvenance{});
    m.provenance.push_back({0, 1, 0.5});  // node 4 splits edge (0,1)
    Tet t1;
    t1.v = {0, 1, 2, 3};  // still uses edge (0,1) unsplit
    Tet t2;
    t2.v = {4, 1, 2, 3};
    m.tets = {t1, t2};
    CHECK(!check_conformity(m).ok());
}

TEST_CASE("mesh file round trip is bit identical") {
    const auto prism = domains::build_domain("prism");
    const SingularSet S = prism.with_grading(0.5, 0.3);
    const auto fine = refine_mesh(prism.level0, S, 2);

    std::ostringstream first;
    save_mesh(*fine, first);
    std::istringstream back(first.str());
    const Mesh loaded = load_mesh(back);
    std::ostringstream second;
    save_mesh(loaded, second);
    CHECK(first.str() == second.str());

    REQUIRE(loaded.points.size() == fine->points.size());
    for (std::size_t i = 0; i < loaded.points.size(); ++i) {
        CHECK(loaded.points[i].x == fine->points[i].x);
        CHECK(loaded.points[i].y == fine->points[i].y);
        CHECK(loaded.points[i].z == fine->points[i].z);
    }
    CHECK(loaded.level == fine->level);
    CHECK(loaded.tets.size() == fine->tets.size());
}

TEST_CASE("degenerate children are rejected") {
    auto t = make_o_tet();
    // Squash the tet so a child collapses.
    t.mesh.points[1] = t.mesh.points[0];
    Chain c = chain_from(t.mesh);
    CHECK_THROWS_AS(chain_children(c, t.S), DegenerateChild);
}
