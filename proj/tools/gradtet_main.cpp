// Command line front end: graded refinement, single solves, and convergence
// studies on the embedded benchmark domains.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gradtet/conformity.hpp"
#include "gradtet/errors.hpp"
#include "gradtet/experiment.hpp"
#include "gradtet/mesh_io.hpp"
#include "gradtet/refine.hpp"
#include "gradtet/shape.hpp"
#include "gradtet/vtk_io.hpp"

namespace {

using namespace gradtet;

constexpr int kLevelCap = 5;

struct CommonOpts {
    std::string domain = "prism";
    std::vector<double> kappa_edge{0.2};
    double kappa_vertex = 0.5;
    int levels = 2;
    double tol = 1e-10;
    std::string out;
    std::string format = "text";
    std::string vtk;
    bool allow_large = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool kappa_list) {
    // Accepted (and pre-processed) on every subcommand as well as the app.
    static std::string config_dummy;
    cmd->add_option("--config", config_dummy, "key=value config file; flags override it");
    cmd->add_option("--domain", o.domain, "Model domain: prism or fichera")
        ->check(CLI::IsMember({"prism", "fichera"}));
    auto* ke = cmd->add_option("--kappa-edge", o.kappa_edge,
                               "Edge grading parameter(s) in (0, 1/2], comma separated");
    ke->delimiter(',');
    if (!kappa_list) ke->expected(1);
    cmd->add_option("--kappa-vertex", o.kappa_vertex, "Vertex grading parameter in (0, 1/2]");
    cmd->add_option("--levels", o.levels, "Number of refinements");
    cmd->add_option("--tol", o.tol, "CG relative-residual tolerance");
    cmd->add_option("--out", o.out, "Output path (mesh file or table/CSV prefix)");
    cmd->add_option("--format", o.format, "Table format: text or csv")
        ->check(CLI::IsMember({"text", "csv"}));
    cmd->add_flag("--allow-large", o.allow_large,
                  "Permit levels beyond " + std::to_string(kLevelCap));
}

void check_level_cap(const CommonOpts& o) {
    if (o.levels > kLevelCap && !o.allow_large)
        throw OutOfRange("level " + std::to_string(o.levels) + " exceeds the default cap of " +
                         std::to_string(kLevelCap) +
                         " (hundreds of thousands of tets); pass --allow-large to proceed");
    if (o.levels < 0) throw OutOfRange("levels must be non-negative");
}

std::shared_ptr<const Mesh> refine_domain(const domains::DomainSpec& dom, const SingularSet& S,
                                          int levels) {
    std::shared_ptr<const Mesh> mesh = dom.level0;
    for (int l = 0; l < levels; ++l) mesh = refine_mesh(mesh, S);
    return mesh;
}

int cmd_refine(const CommonOpts& o, const std::string& quality_csv) {
    check_level_cap(o);
    const auto dom = domains::build_domain(o.domain);
    const SingularSet S = dom.with_grading(o.kappa_vertex, o.kappa_edge.at(0));
    const auto mesh = refine_domain(dom, S, o.levels);
    const auto conf = check_conformity(*mesh);
    std::printf("%s level %d: %lld tets, %d vertices, conforming=%s\n", o.domain.c_str(),
                mesh->level, static_cast<long long>(mesh->n_tets()), mesh->n_points(),
                conf.ok() ? "yes" : "NO");
    if (!o.out.empty()) {
        save_mesh(*mesh, o.out);
        std::printf("mesh written to %s\n", o.out.c_str());
    }
    if (!o.vtk.empty()) {
        export_vtk(*mesh, o.vtk);
        std::printf("vtk written to %s\n", o.vtk.c_str());
    }
    if (!quality_csv.empty()) {
        const auto rows = shape::quality_table(shape::hierarchy_of(*mesh), S);
        shape::write_quality_csv(quality_csv, rows);
        std::printf("quality table written to %s\n", quality_csv.c_str());
    }
    return conf.ok() ? 0 : 1;
}

int cmd_solve(const CommonOpts& o) {
    check_level_cap(o);
    const auto dom = domains::build_domain(o.domain);
    const SingularSet S = dom.with_grading(o.kappa_vertex, o.kappa_edge.at(0));
    const auto mesh = refine_domain(dom, S, o.levels);
    const auto sys = fem::assemble(*mesh, [](const Point&) { return 1.0; });
    fem::SolveStats stats;
    const auto u = fem::solve_poisson(mesh, sys, o.tol, 0, &stats);
    const double energy = fem::h1_seminorm(u, sys);
    std::printf("%s level %d: dofs=%d cg_iters=%d residual=%.3g energy=%.10g\n",
                o.domain.c_str(), o.levels, stats.dofs, stats.cg_iterations,
                stats.relative_residual, energy * energy);
    if (!o.out.empty()) save_mesh(*mesh, o.out);
    if (!o.vtk.empty()) export_vtk(*mesh, o.vtk, &u.coeffs, "u");
    return 0;
}

int cmd_study(const CommonOpts& o) {
    check_level_cap(o);
    std::vector<experiments::RateTable> tables;
    for (double ke : o.kappa_edge) {
        experiments::ExperimentConfig cfg;
        cfg.domain = o.domain;
        cfg.kappa_edge = ke;
        cfg.kappa_vertex = o.kappa_vertex;
        cfg.levels = o.levels;
        cfg.tol = o.tol;
        std::fprintf(stderr, "running %s study: kappa_e=%g kappa_v=%g levels=%d\n",
                     o.domain.c_str(), ke, o.kappa_vertex, o.levels);
        tables.push_back(experiments::run_experiment(cfg));

        if (!o.out.empty()) {
            std::ostringstream name;
            name << o.out << "_" << o.domain << "_ke" << ke << ".csv";
            std::ofstream csv(name.str());
            if (!csv) throw IoError("cannot open '" + name.str() + "'");
            experiments::write_csv(tables.back(), csv);
        }
    }
    for (const auto& t : tables) {
        experiments::emit_table(t, o.format, std::cout);
        std::cout << "\n";
    }
    if (tables.size() > 1) experiments::write_rate_matrix(tables, std::cout);
    if (!o.out.empty() && o.format == "text") {
        std::ofstream txt(o.out + "_rates.txt");
        experiments::write_rate_matrix(tables, txt);
    }
    return 0;
}

// key=value config support: values provide defaults, explicit flags win.
void apply_config(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") path = args[i + 1];
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    for (std::string line; std::getline(in, line);) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        const std::string flag = "--" + key;
        bool overridden = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) overridden = true;
        if (!overridden) {
            args.push_back(flag);
            if (value != "true") args.push_back(value);
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graded tetrahedral refinement and Poisson convergence studies"};
    app.require_subcommand(1);

    CommonOpts refine_opts, solve_opts, study_opts;
    std::string quality_csv;
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file; flags override it");

    auto* refine = app.add_subcommand("refine", "Refine a domain mesh (no solve)");
    add_common(refine, refine_opts, false);
    refine->add_option("--vtk", refine_opts.vtk, "Write the mesh as legacy ASCII VTK");
    refine->add_option("--quality", quality_csv, "Write the per-level quality CSV");

    auto* solve = app.add_subcommand("solve", "Solve the Poisson problem at one level");
    add_common(solve, solve_opts, false);
    solve->add_option("--vtk", solve_opts.vtk, "Write mesh + solution as legacy ASCII VTK");

    auto* study = app.add_subcommand("study", "Refine, solve and report convergence rates");
    add_common(study, study_opts, true);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        apply_config(args);
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());

        if (refine->parsed()) return cmd_refine(refine_opts, quality_csv);
        if (solve->parsed()) return cmd_solve(solve_opts);
        if (study->parsed()) return cmd_study(study_opts);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
