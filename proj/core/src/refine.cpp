#include "gradtet/refine.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <unordered_map>

#include "gradtet/errors.hpp"

namespace gradtet {

namespace {

constexpr double kDegenerateRel = 1e-14;
// Quantum for deduplicating split parameters; both sides of a shared edge
// derive t from the same kappa, so anything beyond float noise is a break.
constexpr double kSplitQuantum = 1e-12;

// Local edge slots: 4=x01, 5=x02, 6=x03, 7=x12, 8=x13, 9=x23.
constexpr int kEdgeOf[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

std::int64_t quantize_split(double t) { return std::llround(t / kSplitQuantum); }

struct EdgeKey {
    std::int64_t packed;
    bool operator==(const EdgeKey& o) const { return packed == o.packed; }
};
struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const { return std::hash<std::int64_t>()(k.packed); }
};
EdgeKey make_edge_key(int a, int b) {
    return {(static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b)};
}

}  // namespace

double edge_ratio(TetType type, int k, int l, std::optional<double> kappa_v,
                  std::optional<double> kappa_e, std::optional<double> kappa_ev) {
    if (!(0 <= k && k < l && l <= 3)) throw OutOfRange("edge_ratio requires 0 <= k < l <= 3");
    auto need = [&](const std::optional<double>& v, const char* name) {
        if (!v) throw MissingParameter(std::string(name) + " required for type " +
                                       to_string(type));
        return *v;
    };
    switch (type) {
        case TetType::O:
            return 0.5;
        case TetType::V:
            return k == 0 ? need(kappa_ev, "kappa_ev") : 0.5;
        case TetType::VE:
            return k == 0 ? need(kappa_e, "kappa_e") : 0.5;
        case TetType::E:
            if (k <= 1 && l >= 2) return need(kappa_e, "kappa_e");
            return 0.5;
        case TetType::EV:
            if (k == 0 && l >= 2) return need(kappa_ev, "kappa_ev");
            if (k == 1 && l >= 2) return need(kappa_e, "kappa_e");
            if (k == 0 && l == 1) return need(kappa_v, "kappa_v");
            return 0.5;  // (2,3)
    }
    throw OutOfRange("bad tet type");
}

const std::array<TetType, 8>& child_types(TetType parent) {
    using T = TetType;
    static const std::array<TetType, 8> o{T::O, T::O, T::O, T::O, T::O, T::O, T::O, T::O};
    static const std::array<TetType, 8> v{T::V, T::O, T::O, T::O, T::O, T::O, T::O, T::O};
    static const std::array<TetType, 8> ve{T::VE, T::O, T::O, T::O, T::O, T::O, T::O, T::O};
    static const std::array<TetType, 8> e{T::E, T::E, T::O, T::O, T::VE, T::VE, T::O, T::O};
    static const std::array<TetType, 8> ev{T::EV, T::E, T::O, T::O, T::VE, T::VE, T::O, T::O};
    switch (parent) {
        case T::O: return o;
        case T::V: return v;
        case T::VE: return ve;
        case T::E: return e;
        case T::EV: return ev;
    }
    return o;
}

Tet child_tet_tags(const Tet& parent, int slot) {
    Tet c;
    c.type = child_types(parent.type)[slot];
    switch (c.type) {
        case TetType::O:
            break;
        case TetType::V:
            c.sv = parent.sv;
            break;
        case TetType::VE:
            c.se = parent.se;
            break;
        case TetType::E:
            c.se = parent.se;
            // Both on-edge children (x0,x01,..) and (x01,x1,..) keep the
            // parent's slot0 -> slot1 direction.
            c.edge_forward = parent.edge_forward;
            break;
        case TetType::EV:
            c.sv = parent.sv;
            c.se = parent.se;
            c.edge_forward = parent.edge_forward;
            break;
    }
    return c;
}

std::array<double, 6> split_params(const Tet& tet, const SingularSet& S) {
    std::optional<double> kv, ke, kev;
    if (tet.sv >= 0) {
        kv = S.kappa(tet.sv);
        kev = S.kappa_ev(tet.sv);
    }
    if (tet.se >= 0) ke = S.kappa(tet.se);
    if (tet.type == TetType::V && tet.sv < 0)
        throw MissingParameter("V tet without a vertex entity");
    std::array<double, 6> t{};
    for (int e = 0; e < 6; ++e)
        t[e] = edge_ratio(tet.type, kEdgeOf[e][0], kEdgeOf[e][1], kv, ke, kev);
    return t;
}

namespace {

// Children from node slots; volume guard against corrupted input geometry.
template <typename NodeOf>
std::array<Tet, 8> build_children(const Tet& parent, const std::array<Point, 4>& pts,
                                  NodeOf&& node_of) {
    const double parent_vol = tet_volume(pts[0], pts[1], pts[2], pts[3]);
    std::array<int, 10> slot_id;
    std::array<Point, 10> slot_pt;
    for (int s = 0; s < 4; ++s) {
        slot_id[s] = parent.v[s];
        slot_pt[s] = pts[s];
    }
    for (int e = 0; e < 6; ++e) {
        auto [id, p] = node_of(e);
        slot_id[4 + e] = id;
        slot_pt[4 + e] = p;
    }

    std::array<Tet, 8> children;
    for (int c = 0; c < 8; ++c) {
        Tet child = child_tet_tags(parent, c);
        std::array<Point, 4> cp;
        for (int i = 0; i < 4; ++i) {
            const int s = kChildSlots[c][i];
            child.v[i] = slot_id[s];
            cp[i] = slot_pt[s];
        }
        const double cv = tet_volume(cp[0], cp[1], cp[2], cp[3]);
        if (cv <= kDegenerateRel * parent_vol) {
            std::ostringstream os;
            os << "child " << c << " volume " << cv << " below " << kDegenerateRel
               << " x parent volume " << parent_vol;
            throw DegenerateChild(os.str());
        }
        children[c] = child;
    }
    return children;
}

}  // namespace

std::array<Tet, 8> refine_tet(const Tet& tet, std::vector<Point>& points, const SingularSet& S) {
    const std::array<Point, 4> pts{points[tet.v[0]], points[tet.v[1]], points[tet.v[2]],
                                   points[tet.v[3]]};
    const auto t = split_params(tet, S);
    std::array<Tet, 8> out;
    {
        auto node_of = [&](int e) {
            const Point p = lerp(pts[kEdgeOf[e][0]], pts[kEdgeOf[e][1]], t[e]);
            points.push_back(p);
            return std::pair<int, Point>(static_cast<int>(points.size()) - 1, p);
        };
        out = build_children(tet, pts, node_of);
    }
    return out;
}

std::shared_ptr<const Mesh> refine_mesh(std::shared_ptr<const Mesh> mesh, const SingularSet& S) {
    const Mesh& m = *mesh;
    auto fine = std::make_shared<Mesh>();
    fine->level = m.level + 1;
    fine->parent = mesh;
    fine->points = m.points;
    fine->provenance = m.provenance;
    const bool track_boundary = m.has_boundary_info();
    if (track_boundary) fine->vertex_facets = m.vertex_facets;
    fine->tets.reserve(m.tets.size() * 8);

    struct SplitNode {
        std::int64_t quantized;
        int id;
    };
    std::unordered_map<EdgeKey, SplitNode, EdgeKeyHash> node_of_edge;
    node_of_edge.reserve(m.tets.size() * 4);

    for (std::int64_t ti = 0; ti < m.n_tets(); ++ti) {
        const Tet& T = m.tets[ti];
        const auto pts = m.tet_points(ti);
        const auto t = split_params(T, S);

        auto node_of = [&](int e) {
            int a = T.v[kEdgeOf[e][0]];
            int b = T.v[kEdgeOf[e][1]];
            double tr = t[e];  // relative to the smaller vertex id
            if (a > b) {
                std::swap(a, b);
                tr = 1.0 - tr;
            }
            const std::int64_t q = quantize_split(tr);
            auto [it, inserted] = node_of_edge.try_emplace(make_edge_key(a, b),
                                                           SplitNode{q, fine->n_points()});
            if (inserted) {
                const Point p = lerp(m.points[a], m.points[b], tr);
                fine->points.push_back(p);
                fine->provenance.push_back({a, b, tr});
                if (track_boundary)
                    fine->vertex_facets.push_back(m.vertex_facets[a] & m.vertex_facets[b]);
            } else if (it->second.quantized != q) {
                std::ostringstream os;
                os << "edge (" << a << "," << b << ") split at both "
                   << it->second.quantized * kSplitQuantum << " and " << tr
                   << "; initial mesh is incompatible with the grading assignment";
                throw ConformityBreak(os.str());
            }
            return std::pair<int, Point>(it->second.id, fine->points[it->second.id]);
        };

        const auto children = build_children(T, pts, node_of);
        for (const auto& c : children) fine->tets.push_back(c);
    }
    return fine;
}

std::shared_ptr<const Mesh> refine_mesh(std::shared_ptr<const Mesh> mesh, const SingularSet& S,
                                        int n) {
    for (int i = 0; i < n; ++i) mesh = refine_mesh(std::move(mesh), S);
    return mesh;
}

}  // namespace gradtet
