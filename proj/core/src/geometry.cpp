#include "gradtet/geometry.hpp"

#include <algorithm>
#include <limits>

namespace gradtet {

double line_projection_param(const Point& p, const Point& a, const Point& b) {
    const Vec3 d = b - a;
    return dot(p - a, d) / norm2(d);
}

double point_line_distance(const Point& p, const Point& a, const Point& b) {
    const Vec3 d = b - a;
    return norm(cross(p - a, d)) / norm(d);
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    double t = line_projection_param(p, a, b);
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - lerp(a, b, t));
}

std::array<double, 4> barycentric(const Point& p, const std::array<Point, 4>& tet) {
    const double v = signed_tet_volume(tet[0], tet[1], tet[2], tet[3]);
    return {
        signed_tet_volume(p, tet[1], tet[2], tet[3]) / v,
        signed_tet_volume(tet[0], p, tet[2], tet[3]) / v,
        signed_tet_volume(tet[0], tet[1], p, tet[3]) / v,
        signed_tet_volume(tet[0], tet[1], tet[2], p) / v,
    };
}

bool point_in_tet(const Point& p, const std::array<Point, 4>& tet, double tol) {
    const auto l = barycentric(p, tet);
    for (double li : l)
        if (!(li >= -tol)) return false;
    return true;
}

std::optional<std::pair<double, double>> clip_segment_to_tet(
    const Point& a, const Point& b, const std::array<Point, 4>& tet, double tol) {
    // Each barycentric coordinate is affine along the segment; the closure is
    // the set where all four are >= 0.
    const auto la = barycentric(a, tet);
    const auto lb = barycentric(b, tet);
    // Noise floor: a constraint whose variation along the segment is at
    // rounding level is effectively constant (the segment lies in a face
    // plane); its crossing parameter would be garbage.
    double scale = 1.0;
    for (int i = 0; i < 4; ++i) scale = std::max({scale, std::abs(la[i]), std::abs(lb[i])});
    const double dv_floor = 1e-12 * scale;
    double t0 = 0.0, t1 = 1.0;
    for (int i = 0; i < 4; ++i) {
        const double va = la[i], vb = lb[i];
        const double dv = vb - va;
        if (std::abs(dv) <= dv_floor) {
            if (va < -dv_floor && vb < -dv_floor) return std::nullopt;
            continue;
        }
        const double tcross = (-va) / dv;
        if (dv > 0.0)
            t0 = std::max(t0, tcross);
        else
            t1 = std::min(t1, tcross);
    }
    if (t0 > t1 + tol) return std::nullopt;
    return std::make_pair(t0, std::min(t1, 1.0));
}

static double triangle_max_angle(const Point& a, const Point& b, const Point& c) {
    auto angle_at = [](const Point& v, const Point& p, const Point& q) {
        const Vec3 u = p - v, w = q - v;
        const double cs = std::clamp(dot(u, w) / (norm(u) * norm(w)), -1.0, 1.0);
        return std::acos(cs);
    };
    return std::max({angle_at(a, b, c), angle_at(b, a, c), angle_at(c, a, b)});
}

double max_face_angle_of_tet(const std::array<Point, 4>& tet) {
    static constexpr int faces[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    double m = 0.0;
    for (const auto& f : faces)
        m = std::max(m, triangle_max_angle(tet[f[0]], tet[f[1]], tet[f[2]]));
    return m;
}

std::array<double, 6> dihedral_angles(const std::array<Point, 4>& tet) {
    static constexpr int edges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::array<double, 6> out{};
    for (int e = 0; e < 6; ++e) {
        const int i = edges[e][0], j = edges[e][1];
        int k = -1, l = -1;
        for (int m = 0; m < 4; ++m)
            if (m != i && m != j) (k < 0 ? k : l) = m;
        // Angle between the two faces meeting at edge (i,j), measured between
        // the in-face directions orthogonal to the edge.
        const Vec3 d = normalized(tet[j] - tet[i]);
        Vec3 u = tet[k] - tet[i];
        Vec3 w = tet[l] - tet[i];
        u = u - d * dot(u, d);
        w = w - d * dot(w, d);
        const double cs = std::clamp(dot(u, w) / (norm(u) * norm(w)), -1.0, 1.0);
        out[e] = std::acos(cs);
    }
    return out;
}

}  // namespace gradtet
