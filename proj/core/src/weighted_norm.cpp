#include "gradtet/weighted_norm.hpp"

#include <cmath>

#include "gradtet/errors.hpp"
#include "gradtet/quadrature.hpp"

namespace gradtet {

DerivBundle AnalyticField::eval(std::int64_t, const Point& p, int order) const {
    DerivBundle out;
    out.value = value_(p);
    if (order >= 1) out.grad = grad_(p);
    if (order >= 2) out.hess = hess_(p);
    return out;
}

P1Field::P1Field(const Mesh& mesh, const std::vector<double>& coeffs)
    : mesh_(mesh), coeffs_(coeffs) {
    if (coeffs.size() != mesh.points.size())
        throw MeshMismatch("coefficient count must equal vertex count");
}

DerivBundle P1Field::eval(std::int64_t tet, const Point& p, int order) const {
    const auto pts = mesh_.tet_points(tet);
    const auto lambda = barycentric(p, pts);
    DerivBundle out;
    const auto& T = mesh_.tets[tet];
    for (int i = 0; i < 4; ++i) out.value += lambda[i] * coeffs_[T.v[i]];
    if (order >= 1) {
        // grad lambda_i from the adjugate of the edge matrix.
        const Vec3 e1 = pts[1] - pts[0], e2 = pts[2] - pts[0], e3 = pts[3] - pts[0];
        const double det = dot(cross(e1, e2), e3);
        const Vec3 g1 = cross(e2, e3) / det;
        const Vec3 g2 = cross(e3, e1) / det;
        const Vec3 g3 = cross(e1, e2) / det;
        const Vec3 g0 = -(g1 + g2 + g3);
        out.grad = g0 * coeffs_[T.v[0]] + g1 * coeffs_[T.v[1]] + g2 * coeffs_[T.v[2]] +
                   g3 * coeffs_[T.v[3]];
    }
    return out;
}

namespace {

struct EdgeLocalFrame {
    Vec3 ex, ey, ez;
};

EdgeLocalFrame frame_for_edge(const SingularEntity& e) {
    EdgeLocalFrame f;
    f.ez = normalized(e.b - e.a);
    // Deterministic transverse pair: start from the axis least aligned with ez.
    const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    int k = 0;
    double best = 2.0;
    for (int i = 0; i < 3; ++i) {
        const double a = std::abs(dot(f.ez, axes[i]));
        if (a < best) {
            best = a;
            k = i;
        }
    }
    f.ex = normalized(axes[k] - f.ez * dot(axes[k], f.ez));
    f.ey = cross(f.ez, f.ex);
    return f;
}

// Squared derivative sums grouped by (total order, transverse order) in the
// given frame.  comp[k][j] = sum over multi-indices with |a| = k and
// |a_perp| = j of (d^a u)^2.
void grouped_squares(const DerivBundle& d, const EdgeLocalFrame& f, int m,
                     double comp[3][3]) {
    comp[0][0] = d.value * d.value;
    if (m >= 1) {
        const double gx = dot(d.grad, f.ex);
        const double gy = dot(d.grad, f.ey);
        const double gz = dot(d.grad, f.ez);
        comp[1][0] = gz * gz;
        comp[1][1] = gx * gx + gy * gy;
    }
    if (m >= 2) {
        auto H = [&](const Vec3& u, const Vec3& v) {
            return u.x * (d.hess[0] * v.x + d.hess[3] * v.y + d.hess[4] * v.z) +
                   u.y * (d.hess[3] * v.x + d.hess[1] * v.y + d.hess[5] * v.z) +
                   u.z * (d.hess[4] * v.x + d.hess[5] * v.y + d.hess[2] * v.z);
        };
        const double hxx = H(f.ex, f.ex), hyy = H(f.ey, f.ey), hzz = H(f.ez, f.ez);
        const double hxy = H(f.ex, f.ey), hxz = H(f.ex, f.ez), hyz = H(f.ey, f.ez);
        comp[2][0] = hzz * hzz;
        comp[2][1] = hxz * hxz + hyz * hyz;
        comp[2][2] = hxx * hxx + hyy * hyy + hxy * hxy;
    }
}

}  // namespace

WeightedNormResult weighted_norm(const Mesh& mesh, const DerivativeField& u,
                                 const SingularSet& S, const std::vector<double>& mu, int m,
                                 const DomainDecomposition& regions, int quad_degree) {
    if (m < 0 || m > 2) throw UnsupportedOrder("weighted norm supports orders 0..2");
    if (m > u.max_order())
        throw UnsupportedOrder("field cannot supply derivatives of order " + std::to_string(m));
    if (mu.size() != static_cast<std::size_t>(S.size()))
        throw ConfigError("one weight exponent per singular entity required");

    std::vector<EdgeLocalFrame> frames(S.size());
    for (int e = S.n_vertices(); e < S.size(); ++e) frames[e] = frame_for_edge(S.entity(e));
    const EdgeLocalFrame cartesian{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    const auto& rule = TetQuadrature::for_degree(quad_degree);
    std::array<double, 3> acc{0.0, 0.0, 0.0};

    for (std::int64_t t = 0; t < mesh.n_tets(); ++t) {
        const auto pts = mesh.tet_points(t);
        const Vec3 e1 = pts[1] - pts[0], e2 = pts[2] - pts[0], e3 = pts[3] - pts[0];
        const double vol = std::abs(dot(cross(e1, e2), e3)) / 6.0;
        for (const auto& node : rule.nodes) {
            const Point x = pts[0] + e1 * node.p.x + e2 * node.p.y + e3 * node.p.z;
            const RegionTag tag = regions.classify(x);

            const EdgeLocalFrame& f =
                tag.edge_entity >= 0 ? frames[tag.edge_entity] : cartesian;
            const DerivBundle d = u.eval(t, x, m);
            double comp[3][3] = {{0}};
            grouped_squares(d, f, m, comp);

            const double wq = node.w * vol;
            for (int k = 0; k <= m; ++k) {
                for (int j = 0; j <= k; ++j) {
                    double weight = 1.0;
                    switch (tag.kind) {
                        case RegionKind::Interior:
                            break;
                        case RegionKind::VertexCore: {
                            const double rv = distance_rho(x, S.entity(tag.vertex_entity));
                            weight = std::pow(rv, 2.0 * (k - mu[tag.vertex_entity]));
                            break;
                        }
                        case RegionKind::EdgeCore: {
                            const double re = distance_rho(x, S.entity(tag.edge_entity));
                            weight = std::pow(re, 2.0 * (j - mu[tag.edge_entity]));
                            break;
                        }
                        case RegionKind::EdgeNearVertex: {
                            const double rv = distance_rho(x, S.entity(tag.vertex_entity));
                            const double rev =
                                angular_distance(x, S.entity(tag.vertex_entity),
                                                 S.entity(tag.edge_entity));
                            weight = std::pow(rv, 2.0 * (k - mu[tag.vertex_entity])) *
                                     std::pow(rev, 2.0 * (j - mu[tag.edge_entity]));
                            break;
                        }
                    }
                    acc[k] += wq * weight * comp[k][j];
                }
            }
        }
    }

    WeightedNormResult out;
    double total2 = 0.0;
    for (int k = 0; k <= m; ++k) {
        out.parts[k] = std::sqrt(acc[k]);
        total2 += acc[k];
    }
    out.total = std::sqrt(total2);
    return out;
}

}  // namespace gradtet
