#ifndef GRADTET_EXPERIMENT_HPP
#define GRADTET_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gradtet/domains.hpp"
#include "gradtet/fe.hpp"

namespace gradtet::experiments {

struct ExperimentConfig {
    std::string domain = "prism";
    double kappa_edge = 0.2;
    double kappa_vertex = 0.5;
    int levels = 5;       // rates need at least 3 solutions (levels >= 2)
    double tol = 1e-10;   // CG relative-residual stop
    long max_iter = 0;    // 0 = solver default 50*sqrt(dofs)
    int load_quad_degree = 2;
    bool check_meshes = true;  // conformity + 8^n census at every level
    bool keep_solutions = false;
};

/// One row per refinement level.  h1_diff at level j is |u_j - u_{j-1}|_H1;
/// the displayed rate at level j is log2 of the ratio of the previous and
/// current differences, so it is computable once three solutions exist.
struct LevelRecord {
    int level = 0;
    int dofs = 0;
    std::int64_t tets = 0;
    double h1_diff = std::numeric_limits<double>::quiet_NaN();
    double rate = std::numeric_limits<double>::quiet_NaN();
    int cg_iters = 0;
    double seconds = 0.0;
    double residual = 0.0;
    double galerkin_rel_error = 0.0;
    double pythagoras_rel_error = 0.0;
    double energy = 0.0;  // |u_j|^2 in the H1 seminorm
    bool conforming = true;
    bool census_ok = true;
};

struct RateTable {
    ExperimentConfig cfg;
    std::vector<LevelRecord> rows;
    std::vector<fem::FEFunction> solutions;  // only when cfg.keep_solutions

    /// Rate displayed at level j (NaN when unavailable).
    double rate_at(int j) const;
};

/// Refine, solve and difference the configured domain up to cfg.levels.
RateTable run_experiment(const ExperimentConfig& cfg);

/// CSV with the fixed schema level,dofs,tets,h1_diff,rate,cg_iters,seconds,
/// preceded by '#' metadata lines (domain, kappas, solver tolerance,
/// residuals) for auditability.
void write_csv(const RateTable& table, std::ostream& out);

/// Single-experiment text table.
void write_text(const RateTable& table, std::ostream& out);

/// Side-by-side rate matrix (rows = level, one column per experiment), rates
/// printed to two decimals.
void write_rate_matrix(std::span<const RateTable> tables, std::ostream& out);

void emit_table(const RateTable& table, const std::string& format, std::ostream& out);

}  // namespace gradtet::experiments

#endif
