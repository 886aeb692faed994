#include "gradtet/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "gradtet/conformity.hpp"
#include "gradtet/errors.hpp"
#include "gradtet/refine.hpp"

namespace gradtet::experiments {

namespace {
double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}
}  // namespace

double RateTable::rate_at(int j) const {
    for (const auto& r : rows)
        if (r.level == j) return r.rate;
    return std::numeric_limits<double>::quiet_NaN();
}

RateTable run_experiment(const ExperimentConfig& cfg) {
    if (cfg.levels < 2) throw OutOfRange("rates need at least 3 solutions (levels >= 2)");

    const domains::DomainSpec dom = domains::build_domain(cfg.domain);
    const SingularSet S = dom.with_grading(cfg.kappa_vertex, cfg.kappa_edge);
    auto f_one = [](const Point&) { return 1.0; };

    RateTable table;
    table.cfg = cfg;

    std::shared_ptr<const Mesh> mesh = dom.level0;
    fem::FEFunction prev;  // solution on the previous level
    double prev_energy2 = 0.0;
    std::vector<double> diffs;

    for (int level = 0; level <= cfg.levels; ++level) {
        const double t0 = now_seconds();
        if (level > 0) mesh = refine_mesh(mesh, S);

        LevelRecord row;
        row.level = level;
        row.tets = mesh->n_tets();
        if (cfg.check_meshes) {
            row.conforming = check_conformity(*mesh).ok();
            row.census_ok = mesh->n_tets() == dom.level0->n_tets() * (std::int64_t{1} << (3 * level));
        }

        const fem::LinearSystem sys = fem::assemble(*mesh, f_one, cfg.load_quad_degree);
        fem::SolveStats stats;
        fem::FEFunction u = fem::solve_poisson(mesh, sys, cfg.tol, cfg.max_iter, &stats);
        row.dofs = stats.dofs;
        row.cg_iters = stats.cg_iterations;
        row.residual = stats.relative_residual;
        row.galerkin_rel_error = stats.galerkin_rel_error;

        const double energy = fem::h1_seminorm(u, sys);
        row.energy = energy * energy;

        if (level > 0) {
            const fem::FEFunction prev_here = fem::prolong(prev, mesh);
            const double d = fem::h1_diff(u, prev_here, sys);
            row.h1_diff = d;
            diffs.push_back(d);
            if (diffs.size() >= 2) {
                const double dp = diffs[diffs.size() - 2];
                row.rate = std::log2(dp / d);
            }
            // Nested Galerkin solutions satisfy |u_j|^2 = |u_{j-1}|^2 + d^2.
            const double lhs = row.energy;
            const double rhs = prev_energy2 + d * d;
            row.pythagoras_rel_error = lhs > 0.0 ? std::abs(lhs - rhs) / lhs : 0.0;
        }

        row.seconds = now_seconds() - t0;
        table.rows.push_back(row);
        if (cfg.keep_solutions) table.solutions.push_back(u);
        prev = std::move(u);
        prev_energy2 = row.energy;
    }
    return table;
}

namespace {

std::string num_or_empty(double v, const char* fmt) {
    if (std::isnan(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

void write_csv(const RateTable& table, std::ostream& out) {
    const auto& cfg = table.cfg;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "# domain=%s kappa_edge=%.6g kappa_vertex=%.6g levels=%d tol=%.3g\n",
                  cfg.domain.c_str(), cfg.kappa_edge, cfg.kappa_vertex, cfg.levels, cfg.tol);
    out << buf;
    out << "# residuals:";
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof buf, " %.3g", r.residual);
        out << buf;
    }
    out << "\n";
    out << "level,dofs,tets,h1_diff,rate,cg_iters,seconds\n";
    for (const auto& r : table.rows) {
        out << r.level << "," << r.dofs << "," << r.tets << ","
            << num_or_empty(r.h1_diff, "%.10g") << "," << num_or_empty(r.rate, "%.6f") << ","
            << r.cg_iters << ",";
        std::snprintf(buf, sizeof buf, "%.3f", r.seconds);
        out << buf << "\n";
    }
}

void write_text(const RateTable& table, std::ostream& out) {
    const auto& cfg = table.cfg;
    char buf[256];
    std::snprintf(buf, sizeof buf, "domain=%s  kappa_e=%.4g  kappa_v=%.4g  tol=%.2g\n",
                  cfg.domain.c_str(), cfg.kappa_edge, cfg.kappa_vertex, cfg.tol);
    out << buf;
    out << "level      dofs         tets       h1_diff   rate   cg_iters  seconds\n";
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof buf, "%5d %9d %12lld %13s %6s %10d %8.2f\n", r.level, r.dofs,
                      static_cast<long long>(r.tets),
                      num_or_empty(r.h1_diff, "%.4e").c_str(),
                      num_or_empty(r.rate, "%.2f").c_str(), r.cg_iters, r.seconds);
        out << buf;
    }
}

void write_rate_matrix(std::span<const RateTable> tables, std::ostream& out) {
    if (tables.empty()) return;
    char buf[64];
    out << "  j |";
    for (const auto& t : tables) {
        std::snprintf(buf, sizeof buf, "  kappa_e=%-5.3g", t.cfg.kappa_edge);
        out << buf;
    }
    out << "\n----+";
    for (std::size_t i = 0; i < tables.size(); ++i) out << "---------------";
    out << "\n";
    int max_level = 0;
    for (const auto& t : tables) max_level = std::max(max_level, t.cfg.levels);
    for (int j = 2; j <= max_level; ++j) {
        std::snprintf(buf, sizeof buf, "%3d |", j);
        out << buf;
        for (const auto& t : tables) {
            const double r = t.rate_at(j);
            if (std::isnan(r))
                out << "              -";
            else {
                std::snprintf(buf, sizeof buf, "          %5.2f", r);
                out << buf;
            }
        }
        out << "\n";
    }
}

void emit_table(const RateTable& table, const std::string& format, std::ostream& out) {
    if (format == "csv")
        write_csv(table, out);
    else if (format == "text")
        write_text(table, out);
    else
        throw OutOfRange("unknown table format '" + format + "' (expected text or csv)");
}

}  // namespace gradtet::experiments
