#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "gradtet/errors.hpp"
#include "gradtet/experiment.hpp"
#include "gradtet/mesh_io.hpp"
#include "gradtet/refine.hpp"
#include "gradtet/vtk_io.hpp"
#include "test_support.hpp"

using namespace gradtet;
using namespace gradtet::experiments;

TEST_CASE("build_domain: embedded data and constants") {
    const auto prism = domains::build_domain("prism");
    CHECK(prism.level0->n_tets() == 18);
    CHECK(prism.entities.size() == 3);
    CHECK(prism.eta_edge == doctest::Approx(2.0 / 3.0));
    CHECK(prism.eta_vertex == doctest::Approx(13.0 / 6.0));

    // Reentrant dihedral angle at the singular edge: the two notch facets
    // meet at 3*pi/2 measured through the domain.
    {
        const Vec3 apex{0.5, 0.5, 0.0};
        const Vec3 d1 = normalized(Vec3{0, 0, 0} - apex);   // toward (0,0)
        const Vec3 d2 = normalized(Vec3{1, 0, 0} - apex);   // toward (1,0)
        const double wedge = std::acos(dot(d1, d2));        // notch opening
        CHECK(2 * M_PI - wedge == doctest::Approx(3 * M_PI / 2));
    }

    const auto fichera = domains::build_domain("fichera");
    CHECK(fichera.level0->n_tets() == 42);
    CHECK(fichera.entities.size() == 4);
    int nv = 0, ne = 0;
    for (const auto& e : fichera.entities)
        (e.kind == EntityKind::Vertex ? nv : ne)++;
    CHECK(nv == 1);
    CHECK(ne == 3);
    CHECK(fichera.eta_vertex == doctest::Approx(0.954));

    CHECK_THROWS_AS(domains::build_domain("torus"), OutOfRange);
}

TEST_CASE("run_experiment produces a consistent rate table") {
    ExperimentConfig cfg;
    cfg.domain = "prism";
    cfg.kappa_edge = 0.3;
    cfg.kappa_vertex = 0.5;
    cfg.levels = 2;
    const auto table = run_experiment(cfg);

    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].dofs == 0);  // every level-0 vertex is on the boundary
    CHECK(std::isnan(table.rows[0].h1_diff));
    CHECK(!std::isnan(table.rows[1].h1_diff));
    CHECK(!std::isnan(table.rows[2].rate));
    CHECK(std::isnan(table.rows[1].rate));
    CHECK(table.rate_at(2) == doctest::Approx(table.rows[2].rate));

    for (const auto& r : table.rows) {
        CHECK(r.conforming);
        CHECK(r.census_ok);
        CHECK(r.galerkin_rel_error < 1e-8);
        if (r.level > 0) CHECK(r.pythagoras_rel_error < 1e-6);
    }
    // Energies grow with the trial space.
    CHECK(table.rows[1].energy >= table.rows[0].energy);
    CHECK(table.rows[2].energy >= table.rows[1].energy);

    // Deterministic rerun: all numeric fields except wall time coincide.
    const auto again = run_experiment(cfg);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(again.rows[i].dofs == table.rows[i].dofs);
        CHECK(again.rows[i].tets == table.rows[i].tets);
        CHECK(again.rows[i].cg_iters == table.rows[i].cg_iters);
        if (!std::isnan(table.rows[i].h1_diff))
            CHECK(again.rows[i].h1_diff == table.rows[i].h1_diff);
        CHECK(again.rows[i].energy == table.rows[i].energy);
    }

    ExperimentConfig bad = cfg;
    bad.levels = 1;
    CHECK_THROWS_AS(run_experiment(bad), OutOfRange);
}

TEST_CASE("dof counts grow like 8^n") {
    ExperimentConfig cfg;
    cfg.domain = "prism";
    cfg.kappa_edge = 0.3;
    cfg.levels = 3;
    const auto table = run_experiment(cfg);
    for (const auto& r : table.rows) {
        if (r.level < 2) continue;
        const double ratio = r.dofs / std::pow(8.0, r.level);
        CHECK(ratio > 0.3);
        CHECK(ratio < 3.5);
    }
}

TEST_CASE("csv and text emitters") {
    ExperimentConfig cfg;
    cfg.domain = "prism";
    cfg.kappa_edge = 0.25;
    cfg.levels = 2;
    const auto table = run_experiment(cfg);

    std::ostringstream csv;
    write_csv(table, csv);
    const std::string s = csv.str();
    CHECK(s.find("level,dofs,tets,h1_diff,rate,cg_iters,seconds\n") != std::string::npos);
    CHECK(s.find("# domain=prism") != std::string::npos);
    CHECK(s.find("kappa_edge=0.25") != std::string::npos);
    CHECK(s.find("tol=1e-10") != std::string::npos);

    // Row 0 has empty diff/rate cells.
    std::istringstream lines(s);
    std::string line;
    while (std::getline(lines, line))
        if (line.rfind("0,", 0) == 0) break;
    CHECK(line.find(",,,") != std::string::npos);

    std::ostringstream text;
    emit_table(table, "text", text);
    CHECK(text.str().find("level") != std::string::npos);
    CHECK_THROWS_AS(emit_table(table, "yaml", text), OutOfRange);

    std::ostringstream matrix;
    const RateTable tables[] = {table, table};
    write_rate_matrix(tables, matrix);
    CHECK(matrix.str().find("kappa_e=0.25") != std::string::npos);
    CHECK(matrix.str().find("\n  2 |") != std::string::npos);
}

TEST_CASE("vtk export of a single tetrahedron") {
    Mesh m;
    m.points = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    m.provenance.assign(4, NodeProvenance{});
    Tet t;
    t.v = {0, 1, 2, 3};
    m.tets = {t};

    std::ostringstream out;
    export_vtk(m, out);
    const std::string expected =
        "# vtk DataFile Version 3.0\n"
        "gradtet mesh level 0\n"
        "ASCII\n"
        "DATASET UNSTRUCTURED_GRID\n"
        "POINTS 4 double\n"
        "0 0 0\n"
        "1 0 0\n"
        "0 1 0\n"
        "0 0 1\n"
        "CELLS 1 5\n"
        "4 0 1 2 3\n"
        "CELL_TYPES 1\n"
        "10\n";
    CHECK(out.str() == expected);

    // With point data attached.
    std::vector<double> u{0.0, 1.0, 2.0, 3.0};
    std::ostringstream out2;
    export_vtk(m, out2, &u, "u");
    CHECK(out2.str().find("POINT_DATA 4\nSCALARS u double 1\nLOOKUP_TABLE default\n") !=
          std::string::npos);

    std::vector<double> bad{1.0};
    CHECK_THROWS_AS(export_vtk(m, out2, &bad, "u"), IoError);
}
