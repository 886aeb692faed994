#ifndef GRADTET_GEOMETRY_HPP
#define GRADTET_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <optional>

namespace gradtet {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

using Point = Vec3;

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }
inline Point lerp(const Point& a, const Point& b, double t) {
    return {(1.0 - t) * a.x + t * b.x, (1.0 - t) * a.y + t * b.y, (1.0 - t) * a.z + t * b.z};
}
inline bool almost_equal(const Point& a, const Point& b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol && std::abs(a.z - b.z) <= tol;
}

/// Signed volume of the tetrahedron (p0,p1,p2,p3); positive for a
/// right-handed vertex order.
inline double signed_tet_volume(const Point& p0, const Point& p1, const Point& p2, const Point& p3) {
    return dot(cross(p1 - p0, p2 - p0), p3 - p0) / 6.0;
}
inline double tet_volume(const Point& p0, const Point& p1, const Point& p2, const Point& p3) {
    return std::abs(signed_tet_volume(p0, p1, p2, p3));
}

double point_segment_distance(const Point& p, const Point& a, const Point& b);
double point_line_distance(const Point& p, const Point& a, const Point& b);
/// Parameter t of the orthogonal projection of p onto the line a + t*(b-a).
double line_projection_param(const Point& p, const Point& a, const Point& b);

/// Barycentric coordinates of p with respect to the tetrahedron (p0..p3).
/// Degenerate tetrahedra yield non-finite values; callers guard volume first.
std::array<double, 4> barycentric(const Point& p, const std::array<Point, 4>& tet);
bool point_in_tet(const Point& p, const std::array<Point, 4>& tet, double tol);

/// Clip the segment a + t*(b-a), t in [0,1], against the tetrahedron's closure.
/// Returns the parameter interval of the intersection, or nullopt if empty.
std::optional<std::pair<double, double>> clip_segment_to_tet(
    const Point& a, const Point& b, const std::array<Point, 4>& tet, double tol);

/// Largest interior angle among the four triangular faces, in radians.
double max_face_angle_of_tet(const std::array<Point, 4>& tet);

/// The six dihedral angles (radians) along edges (01,02,03,12,13,23).
std::array<double, 6> dihedral_angles(const std::array<Point, 4>& tet);

}  // namespace gradtet

#endif
