#include "gradtet/mesh.hpp"

#include "gradtet/errors.hpp"

namespace gradtet {

const char* to_string(TetType t) {
    switch (t) {
        case TetType::O: return "O";
        case TetType::V: return "V";
        case TetType::VE: return "VE";
        case TetType::E: return "E";
        case TetType::EV: return "EV";
    }
    return "?";
}

TetType tet_type_from_string(const std::string& s) {
    if (s == "O") return TetType::O;
    if (s == "V") return TetType::V;
    if (s == "VE") return TetType::VE;
    if (s == "E") return TetType::E;
    if (s == "EV") return TetType::EV;
    throw IoError("unknown tetrahedron type '" + s + "'");
}

Mesh make_single_tet_mesh(const std::array<Point, 4>& pts, const Tet& proto) {
    Mesh m;
    m.points.assign(pts.begin(), pts.end());
    m.provenance.assign(4, NodeProvenance{});
    Tet t = proto;
    t.v = {0, 1, 2, 3};
    m.tets.push_back(t);
    return m;
}

bool Facet::contains(const Point& p, double tol) const {
    // On the supporting plane, then inside every edge of the convex loop.
    const Point& o = polygon[0];
    const Vec3 n = cross(polygon[1] - o, polygon[2] - o);
    const double scale = norm(n);
    if (std::abs(dot(p - o, n)) > tol * scale) return false;
    const Vec3 nn = n / scale;
    const int k = static_cast<int>(polygon.size());
    for (int i = 0; i < k; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % k];
        // Inward side of edge (a,b) within the plane.
        const Vec3 inward = cross(nn, b - a);
        if (dot(p - a, inward) < -tol * norm(inward)) return false;
    }
    return true;
}

void assign_boundary_facets(Mesh& mesh, const std::vector<Facet>& facets, double tol) {
    if (mesh.level != 0)
        throw ConfigError("boundary facets are assigned on the level-0 mesh only");
    if (facets.size() > 32) throw ConfigError("at most 32 boundary facets supported");
    mesh.vertex_facets.assign(mesh.points.size(), 0);
    for (int v = 0; v < mesh.n_points(); ++v)
        for (std::size_t f = 0; f < facets.size(); ++f)
            if (facets[f].contains(mesh.points[v], tol))
                mesh.vertex_facets[v] |= (1u << f);
}

}  // namespace gradtet
