#include "gradtet/shape.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "gradtet/errors.hpp"

namespace gradtet::shape {

namespace {
constexpr double kEdgeTol = 1e-14;
}

EdgeFrame make_edge_frame(const std::array<Point, 4>& pts) {
    EdgeFrame f;
    f.origin = pts[0];
    const Vec3 d = pts[1] - pts[0];
    const double len = norm(d);
    if (len < kEdgeTol) throw ZeroEdgeLength("frame edge x0x1 has zero length");
    f.ez = d / len;
    Vec3 t = pts[2] - pts[0];
    t = t - f.ez * dot(t, f.ez);
    const double tlen = norm(t);
    if (tlen < kEdgeTol * len) throw FrameMismatch("x2 lies on the edge axis");
    f.ex = t / tlen;
    f.ey = cross(f.ez, f.ex);
    return f;
}

RefTetShape make_ref_shape(const std::array<Point, 4>& pts, const EdgeFrame& frame) {
    RefTetShape s;
    s.l0 = norm(pts[1] - pts[0]);
    const Vec3 l2 = frame.local(pts[2]);
    const Vec3 l3 = frame.local(pts[3]);
    s.lambda2 = l2.x;
    s.lambda3 = l3.x;
    s.xi3 = l3.y;
    if (std::abs(s.lambda2) < kEdgeTol || std::abs(s.xi3) < kEdgeTol)
        throw FrameMismatch("initial tetrahedron is degenerate in the transverse plane");
    return s;
}

RelativeDistances relative_z_distances(const std::array<Point, 4>& pts, bool edge_forward,
                                       const EdgeFrame& frame) {
    const Point& g0 = edge_forward ? pts[0] : pts[1];
    const Point& g1 = edge_forward ? pts[1] : pts[0];
    const double z0 = dot(g0 - frame.origin, frame.ez);
    const double z1 = dot(g1 - frame.origin, frame.ez);
    if (std::abs(z1 - z0) < kEdgeTol) throw ZeroEdgeLength("on-edge vertices coincide");
    RelativeDistances rd;
    for (int i = 0; i < 2; ++i) {
        const double zg = dot(pts[2 + i] - frame.origin, frame.ez);
        rd.first[i] = (zg - z0) / (z1 - z0);
        rd.second[i] = 1.0 - rd.first[i];
    }
    return rd;
}

double absolute_distance(const std::array<Point, 4>& pts, bool edge_forward,
                         const EdgeFrame& frame) {
    const auto rd = relative_z_distances(pts, edge_forward, frame);
    return std::max({std::abs(rd.first[0]), std::abs(rd.second[0]), std::abs(rd.first[1]),
                     std::abs(rd.second[1])});
}

RefMap dilation_v(int i, double kappa) {
    if (!(kappa > 0.0 && kappa <= 0.5)) throw OutOfRange("kappa must lie in (0, 1/2]");
    const double d = std::pow(kappa, -i);
    return {d, d, 0.0, 0.0};
}

namespace {

// Local coordinates with origin at the midpoint of the tet's on-edge edge.
std::array<Vec3, 4> midpoint_local(const std::array<Point, 4>& pts, const EdgeFrame& frame) {
    const Point mid = lerp(pts[0], pts[1], 0.5);
    std::array<Vec3, 4> out;
    for (int i = 0; i < 4; ++i) {
        const Vec3 d = pts[i] - mid;
        out[i] = {dot(d, frame.ex), dot(d, frame.ey), dot(d, frame.ez)};
    }
    return out;
}

void check_on_axis(const std::array<Vec3, 4>& lcl, double scale) {
    for (int s = 0; s < 2; ++s)
        if (std::hypot(lcl[s].x, lcl[s].y) > 1e-9 * scale)
            throw FrameMismatch("tet's singular edge is not aligned with the frame axis");
}

}  // namespace

RefMap reference_map_e(const std::array<Point, 4>& pts, const EdgeFrame& frame,
                       const RefTetShape& shape, double kappa_e, int i) {
    const auto lcl = midpoint_local(pts, frame);
    check_on_axis(lcl, shape.l0);
    const double zeta2 = lcl[2].z;
    const double zeta3 = lcl[3].z;
    const double p2i = std::exp2(i);
    RefMap m;
    m.s = std::pow(kappa_e, -i);
    m.w = p2i;
    m.b1 = -(p2i * zeta2 + shape.l0 / 2.0) / shape.lambda2;
    m.b2 = (p2i * (zeta2 * shape.lambda3 - shape.lambda2 * zeta3) +
            (shape.l0 / 2.0) * (shape.lambda3 - shape.lambda2)) /
           (shape.lambda2 * shape.xi3);
    return m;
}

RefMap reference_map_ev(const std::array<Point, 4>& pts, const EdgeFrame& frame,
                        const RefTetShape& shape, double kappa_ev, double kappa_v, int i) {
    const auto lcl = midpoint_local(pts, frame);
    check_on_axis(lcl, shape.l0);
    const double zeta2 = lcl[2].z;
    const double zeta3 = lcl[3].z;
    const double kvi = std::pow(kappa_v, -i);
    RefMap m;
    m.s = std::pow(kappa_ev, -i);
    m.w = kvi;
    m.b1 = -(kvi * zeta2 + shape.l0 / 2.0) / shape.lambda2;
    m.b2 = (kvi * (zeta2 * shape.lambda3 - shape.lambda2 * zeta3) +
            (shape.l0 / 2.0) * (shape.lambda3 - shape.lambda2)) /
           (shape.lambda2 * shape.xi3);
    return m;
}

RefMap reference_map_ve(int i, const std::array<Point, 4>& t_km1_pts, int k,
                        const EdgeFrame& frame, const RefTetShape& shape, double kappa_e) {
    if (k < 1 || k > i) throw AncestryError("need 1 <= k <= i for a VE ancestry");
    const RefMap a2 = reference_map_e(t_km1_pts, frame, shape, kappa_e, k - 1);
    RefMap m;
    m.s = std::pow(kappa_e, 1 - i);
    m.w = std::exp2(k - 1) * std::pow(kappa_e, k - i);
    m.b1 = a2.b1;
    m.b2 = a2.b2;
    return m;
}

double map_image_error(const RefMap& map, const std::array<Point, 4>& tet_pts,
                       const Point& local_origin, const EdgeFrame& frame,
                       const std::array<Point, 4>& target) {
    std::array<Vec3, 4> img;
    for (int i = 0; i < 4; ++i) {
        const Vec3 d = tet_pts[i] - local_origin;
        img[i] = map.apply({dot(d, frame.ex), dot(d, frame.ey), dot(d, frame.ez)});
    }
    // Unordered vertex-set comparison: best assignment over all pairings,
    // relative to the target's diameter.
    double diam = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) diam = std::max(diam, norm(target[i] - target[j]));
    std::array<int, 4> perm{0, 1, 2, 3};
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (int i = 0; i < 4; ++i)
            worst = std::max(worst, norm(img[i] - target[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best / diam;
}

std::vector<const Mesh*> hierarchy_of(const Mesh& fine) {
    std::vector<const Mesh*> h;
    for (const Mesh* m = &fine; m != nullptr; m = m->parent.get()) h.push_back(m);
    std::reverse(h.begin(), h.end());
    if (h.front()->level != 0 || static_cast<int>(h.size()) != fine.level + 1)
        throw AncestryError("mesh hierarchy does not reach level 0");
    return h;
}

std::vector<LayerIndex> mesh_layers(const std::vector<const Mesh*>& h) {
    const Mesh& fine = *h.back();
    const int n = fine.level;
    std::vector<LayerIndex> out(fine.tets.size());
    for (std::int64_t t = 0; t < fine.n_tets(); ++t) {
        const std::int64_t init = Mesh::ancestor_index(t, n);
        const TetType t0 = h[0]->tets[init].type;
        LayerIndex li;
        li.initial_tet = init;
        switch (t0) {
            case TetType::O:
                li.kind = LayerKind::None;
                break;
            case TetType::V:
            case TetType::VE:
            case TetType::EV: {
                li.kind = t0 == TetType::EV ? LayerKind::EdgeVertex : LayerKind::Vertex;
                li.layer = n;
                for (int j = 1; j <= n; ++j) {
                    if (Mesh::child_slot(Mesh::ancestor_index(t, n - j)) != 0) {
                        li.layer = j - 1;
                        break;
                    }
                }
                break;
            }
            case TetType::E: {
                li.kind = LayerKind::Edge;
                li.layer = n;
                // Near-edge wedge: E children 0,1 and the octahedron VE
                // children 4,5 stay; VE chains continue through child 0.
                bool in_e = true;
                for (int j = 1; j <= n; ++j) {
                    const int slot = Mesh::child_slot(Mesh::ancestor_index(t, n - j));
                    if (in_e) {
                        if (slot <= 1) continue;
                        if (slot == 4 || slot == 5) {
                            in_e = false;
                            continue;
                        }
                    } else if (slot == 0) {
                        continue;
                    }
                    li.layer = j - 1;
                    break;
                }
                break;
            }
        }
        out[t] = li;
    }
    return out;
}

std::pair<int, std::int64_t> e_chain_root(const std::vector<const Mesh*>& h, int level,
                                          std::int64_t tet) {
    if (h[level]->tets[tet].type != TetType::E) throw AncestryError("tet is not an E-tetrahedron");
    while (level > 0 && h[level - 1]->tets[tet >> 3].type == TetType::E) {
        tet >>= 3;
        --level;
    }
    return {level, tet};
}

std::pair<int, std::int64_t> ve_chain_start(const std::vector<const Mesh*>& h, int level,
                                            std::int64_t tet) {
    if (h[level]->tets[tet].type != TetType::VE)
        throw AncestryError("tet is not a VE-tetrahedron");
    while (level > 0 && h[level - 1]->tets[tet >> 3].type == TetType::VE) {
        tet >>= 3;
        --level;
    }
    if (level == 0 || h[level - 1]->tets[tet >> 3].type != TetType::E)
        throw AncestryError("VE chain does not start from an E-tetrahedron");
    return {level, tet};
}

double max_face_angle(const Mesh& mesh) {
    double m = 0.0;
    for (std::int64_t t = 0; t < mesh.n_tets(); ++t)
        m = std::max(m, max_face_angle_of_tet(mesh.tet_points(t)));
    return m;
}

int similarity_classes(const Mesh& mesh, double quantum) {
    static constexpr int edges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    // Scale-free signature: sorted edge ratios and sorted dihedral angles,
    // snapped to the quantum.  Counting on two grids offset by half a quantum
    // and taking the smaller count absorbs signatures that straddle a grid
    // boundary.
    std::set<std::array<std::int64_t, 12>> grid_a, grid_b;
    for (std::int64_t t = 0; t < mesh.n_tets(); ++t) {
        const auto pts = mesh.tet_points(t);
        std::array<double, 6> len;
        for (int e = 0; e < 6; ++e) len[e] = norm(pts[edges[e][1]] - pts[edges[e][0]]);
        const double lmax = *std::max_element(len.begin(), len.end());
        auto dih = dihedral_angles(pts);
        std::sort(len.begin(), len.end());
        std::sort(dih.begin(), dih.end());
        std::array<double, 12> sig;
        for (int e = 0; e < 6; ++e) {
            sig[e] = len[e] / lmax;
            sig[6 + e] = dih[e];
        }
        std::array<std::int64_t, 12> qa, qb;
        for (int k = 0; k < 12; ++k) {
            qa[k] = std::llround(sig[k] / quantum);
            qb[k] = std::llround(sig[k] / quantum - 0.5);
        }
        grid_a.insert(qa);
        grid_b.insert(qb);
    }
    return static_cast<int>(std::min(grid_a.size(), grid_b.size()));
}

std::vector<QualityRow> quality_table(const std::vector<const Mesh*>& h, const SingularSet& S) {
    std::vector<QualityRow> rows;
    for (const Mesh* mp : h) {
        const Mesh& m = *mp;
        QualityRow row;
        row.level = m.level;
        row.max_angle_deg = max_face_angle(m) * 180.0 / M_PI;
        row.similarity_classes = similarity_classes(m);

        // Frames and shapes per chain root, built on demand.
        std::map<std::pair<int, std::int64_t>, std::pair<EdgeFrame, RefTetShape>> roots;
        auto root_frame = [&](int lvl, std::int64_t idx) -> const std::pair<EdgeFrame, RefTetShape>& {
            auto key = std::make_pair(lvl, idx);
            auto it = roots.find(key);
            if (it == roots.end()) {
                const auto pts = h[lvl]->tet_points(idx);
                const EdgeFrame f = make_edge_frame(pts);
                const RefTetShape s = make_ref_shape(pts, f);
                it = roots.emplace(key, std::make_pair(f, s)).first;
            }
            return it->second;
        };

        for (std::int64_t t = 0; t < m.n_tets(); ++t) {
            const auto& T = m.tets[t];
            if (T.type == TetType::E) {
                const auto [rl, ridx] = e_chain_root(h, m.level, t);
                const auto& [frame, shp] = root_frame(rl, ridx);
                const bool fwd = T.edge_forward == h[rl]->tets[ridx].edge_forward;
                row.max_cT = std::max(row.max_cT, absolute_distance(m.tet_points(t), fwd, frame));
                const RefMap b =
                    reference_map_e(m.tet_points(t), frame, shp, S.kappa(T.se), m.level - rl);
                row.max_b1 = std::max(row.max_b1, std::abs(b.b1));
                row.max_b2 = std::max(row.max_b2, std::abs(b.b2));
            } else if (T.type == TetType::EV) {
                const std::int64_t init = Mesh::ancestor_index(t, m.level);
                const auto& [frame, shp] = root_frame(0, init);
                row.max_cT =
                    std::max(row.max_cT, absolute_distance(m.tet_points(t), true, frame));
                const RefMap b = reference_map_ev(m.tet_points(t), frame, shp,
                                                  S.kappa_ev(T.sv), S.kappa(T.sv), m.level);
                row.max_b1 = std::max(row.max_b1, std::abs(b.b1));
                row.max_b2 = std::max(row.max_b2, std::abs(b.b2));
            }
        }
        rows.push_back(row);
    }
    return rows;
}

void write_quality_csv(const std::string& path, const std::vector<QualityRow>& rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "level,max_angle_deg,similarity_classes,max_cT,max_b1,max_b2\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.6f,%d,%.12g,%.12g,%.12g\n", r.level,
                      r.max_angle_deg, r.similarity_classes, r.max_cT, r.max_b1, r.max_b2);
        out << buf;
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace gradtet::shape
