// Shared fixtures and independent oracles for the test suites.  Everything in
// here stays deliberately separate from the library's computational paths so
// the checks remain meaningful.
#ifndef GRADTET_TEST_SUPPORT_HPP
#define GRADTET_TEST_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "gradtet/classify.hpp"
#include "gradtet/mesh.hpp"
#include "gradtet/refine.hpp"
#include "gradtet/singular_set.hpp"

namespace gradtet::testing {

// ---------------------------------------------------------------------------
// 1D adaptive Simpson quadrature (oracle for separable weighted integrals).

inline double adaptive_simpson_impl(const std::function<double(double)>& f, double a, double b,
                                    double fa, double fm, double fb, double whole, double tol,
                                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_impl(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int max_depth = 40) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// ---------------------------------------------------------------------------
// Dense symmetric positive definite solver (oracle for small CG systems).

inline std::vector<double> cholesky_solve(std::vector<double> A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        A[k * n + k] = std::sqrt(A[k * n + k]);
        for (int i = k + 1; i < n; ++i) A[i * n + k] /= A[k * n + k];
        for (int j = k + 1; j < n; ++j)
            for (int i = j; i < n; ++i) A[i * n + j] -= A[i * n + k] * A[j * n + k];
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) b[i] -= A[i * n + j] * b[j];
        b[i] /= A[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) b[i] -= A[j * n + i] * b[j];
        b[i] /= A[i * n + i];
    }
    return b;
}

// ---------------------------------------------------------------------------
// Halton sequence for quasi-random sampling.

inline double halton(std::int64_t index, int base) {
    double f = 1.0, r = 0.0;
    for (std::int64_t i = index + 1; i > 0; i /= base) {
        f /= base;
        r += f * (i % base);
    }
    return r;
}

inline Point halton3(std::int64_t index) {
    return {halton(index, 2), halton(index, 3), halton(index, 5)};
}

// ---------------------------------------------------------------------------
// Point-location evaluation of a P1 function (oracle for prolongation).

inline double evaluate_p1(const Mesh& mesh, const std::vector<double>& coeffs, const Point& p,
                          double tol = 1e-9) {
    for (std::int64_t t = 0; t < mesh.n_tets(); ++t) {
        const auto pts = mesh.tet_points(t);
        const auto l = barycentric(p, pts);
        if (l[0] >= -tol && l[1] >= -tol && l[2] >= -tol && l[3] >= -tol) {
            double v = 0.0;
            for (int i = 0; i < 4; ++i) v += l[i] * coeffs[mesh.tets[t].v[i]];
            return v;
        }
    }
    throw std::runtime_error("point not located in mesh");
}

// ---------------------------------------------------------------------------
// Synthetic single-tetrahedron meshes of each type, with a consistent
// singular set.

struct TypedTet {
    Mesh mesh;
    SingularSet S;
};

inline Mesh typed_single_tet(const std::array<Point, 4>& pts, const SingularSet& S) {
    const Classification c = classify_tet(pts, S);
    Mesh m;
    m.points.assign(pts.begin(), pts.end());
    m.provenance.assign(4, NodeProvenance{});
    m.tets.push_back(canonicalize_tet({0, 1, 2, 3}, pts, c, S));
    return m;
}

inline TypedTet make_o_tet() {
    TypedTet t{.mesh = {}, .S = SingularSet({}, {})};
    t.mesh = typed_single_tet({Point{10, 10, 10}, {11, 10, 10}, {10, 11, 10}, {10, 10, 11}}, t.S);
    return t;
}

inline TypedTet make_v_tet(double kappa_v = 0.3) {
    SingularSet S({{EntityKind::Vertex, {0, 0, 0}, {}}}, {kappa_v});
    return {typed_single_tet({Point{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, S), S};
}

inline TypedTet make_ve_tet(double kappa_e = 0.25) {
    // The singular edge passes through the tet's corner; both rays leave the
    // tet, so the closure meets S at that interior edge point only.
    SingularSet S({{EntityKind::Edge, {0.5, -0.5, 0}, {-0.5, 0.5, 0}}}, {kappa_e});
    return {typed_single_tet({Point{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, S), S};
}

inline TypedTet make_e_tet(double kappa_e = 0.2) {
    SingularSet S({{EntityKind::Edge, {0, 0, 0}, {0, 0, 1}}}, {kappa_e});
    return {typed_single_tet({Point{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, S), S};
}

inline TypedTet make_ev_tet(double kappa_v = 0.4, double kappa_e = 0.2) {
    SingularSet S({{EntityKind::Vertex, {0, 0, 0}, {}}, {EntityKind::Edge, {0, 0, 0}, {0, 0, 1}}},
                  {kappa_v, kappa_e});
    return {typed_single_tet({Point{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, S), S};
}

/// The four face planes of a single tet as boundary facets (every mesh vertex
/// on a face plane lies on that face for a convex cell).
inline std::vector<Facet> tet_facets(const std::array<Point, 4>& pts) {
    return {Facet{{pts[1], pts[2], pts[3]}}, Facet{{pts[0], pts[2], pts[3]}},
            Facet{{pts[0], pts[1], pts[3]}}, Facet{{pts[0], pts[1], pts[2]}}};
}

// ---------------------------------------------------------------------------
// Standalone refinement chains (no full 8^n meshes): keep a private point
// pool and follow selected children only.

struct Chain {
    std::vector<Point> pool;
    Tet tet;

    std::array<Point, 4> points() const {
        return {pool[tet.v[0]], pool[tet.v[1]], pool[tet.v[2]], pool[tet.v[3]]};
    }
};

inline Chain chain_from(const Mesh& single_tet_mesh) {
    return {single_tet_mesh.points, single_tet_mesh.tets[0]};
}

/// All eight children of the chain head, sharing the (grown) pool.
inline std::array<Tet, 8> chain_children(Chain& c, const SingularSet& S) {
    return refine_tet(c.tet, c.pool, S);
}

}  // namespace gradtet::testing

#endif
