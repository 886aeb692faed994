#include "gradtet/fe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gradtet/errors.hpp"
#include "gradtet/quadrature.hpp"

namespace gradtet::fem {

void CsrMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (int r = 0; r < n; ++r) {
        double acc = 0.0;
        for (std::int64_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += val[k] * x[col[k]];
        y[r] = acc;
    }
}

namespace {

// Element stiffness from barycentric gradients: K_ij = V * grad(l_i).grad(l_j).
struct ElementStiffness {
    std::array<Vec3, 4> grad;
    double volume;
};

ElementStiffness element_gradients(const std::array<Point, 4>& pts) {
    const Vec3 e1 = pts[1] - pts[0], e2 = pts[2] - pts[0], e3 = pts[3] - pts[0];
    const double det = dot(cross(e1, e2), e3);
    if (std::abs(det) < 1e-300) throw DegenerateTet("zero-volume tetrahedron in assembly");
    ElementStiffness es;
    es.volume = std::abs(det) / 6.0;
    es.grad[1] = cross(e2, e3) / det;
    es.grad[2] = cross(e3, e1) / det;
    es.grad[3] = cross(e1, e2) / det;
    es.grad[0] = -(es.grad[1] + es.grad[2] + es.grad[3]);
    return es;
}

constexpr double kDegenerateVolume = 1e-250;

}  // namespace

LinearSystem assemble(const Mesh& mesh, const std::function<double(const Point&)>& f,
                      int load_quad_degree) {
    const int n = mesh.n_points();
    LinearSystem sys;
    sys.b.assign(n, 0.0);
    sys.boundary.assign(n, 0);
    if (mesh.has_boundary_info())
        for (int v = 0; v < n; ++v) sys.boundary[v] = mesh.is_boundary_vertex(v) ? 1 : 0;

    // Two passes: count row entries, then fill and merge duplicates per row in
    // sorted column order (deterministic reduction order).
    std::vector<std::int64_t> count(n + 1, 0);
    for (const auto& T : mesh.tets)
        for (int i = 0; i < 4; ++i) count[T.v[i] + 1] += 4;
    std::vector<std::int64_t> offset(n + 1, 0);
    std::partial_sum(count.begin(), count.end(), offset.begin());
    const std::int64_t nnz_raw = offset[n];
    std::vector<int> raw_col(nnz_raw);
    std::vector<double> raw_val(nnz_raw);
    std::vector<std::int64_t> cursor(offset.begin(), offset.end() - 1);

    const auto& rule = TetQuadrature::for_degree(load_quad_degree);
    for (std::int64_t t = 0; t < mesh.n_tets(); ++t) {
        const auto pts = mesh.tet_points(t);
        const auto es = element_gradients(pts);
        if (es.volume < kDegenerateVolume) throw DegenerateTet("near-zero tet volume");
        const auto& T = mesh.tets[t];
        for (int i = 0; i < 4; ++i) {
            const int r = T.v[i];
            for (int j = 0; j < 4; ++j) {
                raw_col[cursor[r]] = T.v[j];
                raw_val[cursor[r]] = es.volume * dot(es.grad[i], es.grad[j]);
                ++cursor[r];
            }
        }
        // Load: int_T f phi_i with barycentric quadrature.
        for (const auto& node : rule.nodes) {
            const Point x = pts[0] + (pts[1] - pts[0]) * node.p.x + (pts[2] - pts[0]) * node.p.y +
                            (pts[3] - pts[0]) * node.p.z;
            const double fw = f(x) * node.w * es.volume;
            const double l0 = 1.0 - node.p.x - node.p.y - node.p.z;
            sys.b[T.v[0]] += fw * l0;
            sys.b[T.v[1]] += fw * node.p.x;
            sys.b[T.v[2]] += fw * node.p.y;
            sys.b[T.v[3]] += fw * node.p.z;
        }
    }

    sys.A.n = n;
    sys.A.row_ptr.assign(n + 1, 0);
    sys.A.col.reserve(nnz_raw / 2);
    sys.A.val.reserve(nnz_raw / 2);
    std::vector<std::pair<int, double>> row;
    for (int r = 0; r < n; ++r) {
        row.clear();
        for (std::int64_t k = offset[r]; k < offset[r + 1]; ++k)
            row.emplace_back(raw_col[k], raw_val[k]);
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t k = 0; k < row.size();) {
            double acc = 0.0;
            const int c = row[k].first;
            while (k < row.size() && row[k].first == c) acc += row[k++].second;
            sys.A.col.push_back(c);
            sys.A.val.push_back(acc);
        }
        sys.A.row_ptr[r + 1] = static_cast<std::int64_t>(sys.A.col.size());
    }
    return sys;
}

ReducedSystem apply_dirichlet(const LinearSystem& sys, const std::vector<double>* boundary_values) {
    const int n = sys.A.n;
    ReducedSystem red;
    std::vector<int> reduced_index(n, -1);
    for (int v = 0; v < n; ++v) {
        if (!sys.boundary[v]) {
            reduced_index[v] = static_cast<int>(red.full_index.size());
            red.full_index.push_back(v);
        }
    }
    const int m = static_cast<int>(red.full_index.size());
    if (m == 0) throw EmptyInterior("no interior vertices after Dirichlet elimination");

    red.A.n = m;
    red.A.row_ptr.assign(m + 1, 0);
    red.b.assign(m, 0.0);
    for (int r = 0; r < m; ++r) {
        const int fr = red.full_index[r];
        red.b[r] = sys.b[fr];
        for (std::int64_t k = sys.A.row_ptr[fr]; k < sys.A.row_ptr[fr + 1]; ++k) {
            const int c = sys.A.col[k];
            if (reduced_index[c] >= 0) {
                red.A.col.push_back(reduced_index[c]);
                red.A.val.push_back(sys.A.val[k]);
            } else if (boundary_values) {
                red.b[r] -= sys.A.val[k] * (*boundary_values)[c];
            }
        }
        red.A.row_ptr[r + 1] = static_cast<std::int64_t>(red.A.col.size());
    }
    return red;
}

CgResult solve_cg(const CsrMatrix& A, const std::vector<double>& b, double tol, long max_iter) {
    const int n = A.n;
    if (max_iter <= 0) max_iter = static_cast<long>(50.0 * std::sqrt(static_cast<double>(n))) + 10;

    CgResult res;
    res.x.assign(n, 0.0);
    const double bnorm = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
    if (bnorm == 0.0) return res;

    std::vector<double> diag_inv(n);
    for (int r = 0; r < n; ++r) {
        double d = 0.0;
        for (std::int64_t k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k)
            if (A.col[k] == r) d = A.val[k];
        if (d <= 0.0) throw NoConvergence("matrix is not positive definite (bad diagonal)");
        diag_inv[r] = 1.0 / d;
    }

    std::vector<double> r = b, z(n), p(n), Ap(n);
    for (int i = 0; i < n; ++i) z[i] = diag_inv[i] * r[i];
    p = z;
    double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);

    for (long it = 1; it <= max_iter; ++it) {
        A.multiply(p, Ap);
        const double pAp = std::inner_product(p.begin(), p.end(), Ap.begin(), 0.0);
        if (pAp <= 0.0) throw NoConvergence("matrix is not positive definite (p'Ap <= 0)");
        const double alpha = rz / pAp;
        for (int i = 0; i < n; ++i) res.x[i] += alpha * p[i];
        for (int i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
        const double rnorm = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
        res.iterations = static_cast<int>(it);
        res.relative_residual = rnorm / bnorm;
        if (res.relative_residual <= tol) return res;
        for (int i = 0; i < n; ++i) z[i] = diag_inv[i] * r[i];
        const double rz_next = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw NoConvergence("CG did not reach tolerance " + std::to_string(tol) + " in " +
                        std::to_string(max_iter) + " iterations");
}

FEFunction solve_poisson(std::shared_ptr<const Mesh> mesh, const LinearSystem& sys, double tol,
                         long max_iter, SolveStats* stats) {
    FEFunction u;
    u.mesh = mesh;
    u.coeffs.assign(mesh->points.size(), 0.0);

    const bool has_interior =
        std::any_of(sys.boundary.begin(), sys.boundary.end(), [](auto b) { return b == 0; });
    if (!has_interior) {
        // Trivial discrete space: the zero function is the Galerkin solution.
        if (stats) *stats = SolveStats{};
        return u;
    }

    const ReducedSystem red = apply_dirichlet(sys);
    const CgResult cg = solve_cg(red.A, red.b, tol, max_iter);
    for (std::size_t i = 0; i < red.full_index.size(); ++i)
        u.coeffs[red.full_index[i]] = cg.x[i];

    if (stats) {
        stats->cg_iterations = cg.iterations;
        stats->relative_residual = cg.relative_residual;
        stats->dofs = red.A.n;
        // Galerkin identity a(u,u) = (f,u) on the reduced space.
        std::vector<double> Ax(red.A.n);
        red.A.multiply(cg.x, Ax);
        const double energy = std::inner_product(cg.x.begin(), cg.x.end(), Ax.begin(), 0.0);
        const double fu = std::inner_product(cg.x.begin(), cg.x.end(), red.b.begin(), 0.0);
        stats->galerkin_rel_error = energy > 0.0 ? std::abs(energy - fu) / energy : 0.0;
    }
    return u;
}

FEFunction prolong(const FEFunction& coarse, std::shared_ptr<const Mesh> fine_mesh) {
    // Find the coarse mesh on the fine mesh's ancestry.
    std::vector<std::shared_ptr<const Mesh>> chain;
    for (std::shared_ptr<const Mesh> m = fine_mesh; m; m = m->parent) {
        chain.push_back(m);
        if (m.get() == coarse.mesh.get()) break;
    }
    if (chain.empty() || chain.back().get() != coarse.mesh.get())
        throw NotAncestor("coarse mesh is not an ancestor of the fine mesh");

    FEFunction u = coarse;
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
        const Mesh& m = **it;
        const std::size_t old_n = u.coeffs.size();
        u.coeffs.resize(m.points.size());
        for (std::size_t v = old_n; v < m.points.size(); ++v) {
            const auto& pr = m.provenance[v];
            u.coeffs[v] = (1.0 - pr.t) * u.coeffs[pr.a] + pr.t * u.coeffs[pr.b];
        }
        u.mesh = *it;
    }
    return u;
}

double h1_seminorm(const FEFunction& u, const LinearSystem& sys) {
    if (static_cast<int>(u.coeffs.size()) != sys.A.n)
        throw MeshMismatch("function and stiffness matrix have different sizes");
    std::vector<double> Au;
    sys.A.multiply(u.coeffs, Au);
    const double q = std::inner_product(u.coeffs.begin(), u.coeffs.end(), Au.begin(), 0.0);
    return std::sqrt(std::max(q, 0.0));
}

double h1_diff(const FEFunction& a, const FEFunction& b, const LinearSystem& sys) {
    if (a.mesh.get() != b.mesh.get())
        throw MeshMismatch("h1_diff requires both functions on the same mesh");
    FEFunction w;
    w.mesh = a.mesh;
    w.coeffs.resize(a.coeffs.size());
    for (std::size_t i = 0; i < w.coeffs.size(); ++i) w.coeffs[i] = a.coeffs[i] - b.coeffs[i];
    return h1_seminorm(w, sys);
}

std::vector<double> convergence_rates(const std::vector<double>& diffs) {
    if (diffs.size() < 2) throw OutOfRange("convergence rates need at least two differences");
    std::vector<double> rates;
    for (std::size_t j = 0; j + 1 < diffs.size(); ++j) {
        if (!(diffs[j] > 1e-300) || !(diffs[j + 1] > 1e-300))
            throw ZeroDiff("seminorm difference underflows; solutions are identical");
        rates.push_back(std::log2(diffs[j] / diffs[j + 1]));
    }
    return rates;
}

}  // namespace gradtet::fem
