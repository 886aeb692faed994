#ifndef GRADTET_FE_HPP
#define GRADTET_FE_HPP

#include <functional>
#include <memory>
#include <vector>

#include "gradtet/mesh.hpp"

namespace gradtet::fem {

/// P1 nodal function: one coefficient per mesh vertex.
struct FEFunction {
    std::shared_ptr<const Mesh> mesh;
    std::vector<double> coeffs;
};

/// Compressed sparse row symmetric matrix.
struct CsrMatrix {
    int n = 0;
    std::vector<std::int64_t> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
};

/// Stiffness matrix, load vector and the Dirichlet mask of a mesh.
/// The matrix is assembled over all vertices (no boundary conditions), so it
/// doubles as the H1-seminorm Gram matrix.
struct LinearSystem {
    CsrMatrix A;
    std::vector<double> b;
    std::vector<std::uint8_t> boundary;  // 1 = Dirichlet vertex
};

/// Reduced system after symmetric elimination of Dirichlet rows/columns,
/// with the index maps needed to scatter solutions back.
struct ReducedSystem {
    CsrMatrix A;
    std::vector<double> b;
    std::vector<int> full_index;  // reduced row -> mesh vertex
};

/// Assemble the P1 stiffness matrix (exact barycentric-gradient formula) and
/// the load vector for the right-hand side f, integrated with a quadrature
/// rule of the given degree (2 by default, exact for constant and linear f).
LinearSystem assemble(const Mesh& mesh, const std::function<double(const Point&)>& f,
                      int load_quad_degree = 2);

/// Eliminate Dirichlet vertices symmetrically.  `boundary_values`, when
/// given, supplies the lifted values (inhomogeneous data); the load vector is
/// adjusted accordingly.  Throws EmptyInterior when no vertex remains.
ReducedSystem apply_dirichlet(const LinearSystem& sys,
                              const std::vector<double>* boundary_values = nullptr);

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients with relative-residual stop.
/// max_iter <= 0 selects the default 50*sqrt(n).  Reductions run in fixed
/// index order, so results are reproducible run to run.
CgResult solve_cg(const CsrMatrix& A, const std::vector<double>& b, double tol = 1e-10,
                  long max_iter = 0);

/// Solve the homogeneous Dirichlet problem on a mesh with the given
/// right-hand side; returns the full-length coefficient vector (zeros on the
/// boundary).  A mesh whose vertices are all on the boundary yields the zero
/// function (the discrete space is trivial).
struct SolveStats {
    int cg_iterations = 0;
    double relative_residual = 0.0;
    double galerkin_rel_error = 0.0;  // |a(u,u) - (f,u)| / a(u,u)
    int dofs = 0;
};
FEFunction solve_poisson(std::shared_ptr<const Mesh> mesh, const LinearSystem& sys,
                         double tol = 1e-10, long max_iter = 0, SolveStats* stats = nullptr);

/// Interpolate a coarse function onto a descendant mesh, one level at a time
/// via node provenance; the result is pointwise identical to the input.
FEFunction prolong(const FEFunction& coarse, std::shared_ptr<const Mesh> fine_mesh);

/// H1 seminorm of the difference of two functions on the same mesh, computed
/// as sqrt(w' A w) with the pre-boundary-condition stiffness matrix.
double h1_diff(const FEFunction& a, const FEFunction& b, const LinearSystem& sys);

/// Energy seminorm |u|_H1 = sqrt(u' A u).
double h1_seminorm(const FEFunction& u, const LinearSystem& sys);

/// rate_j = log2(diff_j / diff_{j+1}) for consecutive seminorm differences.
std::vector<double> convergence_rates(const std::vector<double>& diffs);

}  // namespace gradtet::fem

#endif
