#include "gradtet/conformity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gradtet {

namespace {

struct TripleHash {
    std::size_t operator()(const std::array<int, 3>& k) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : k) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::int64_t pack_edge(int a, int b) {
    return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

ValidationReport check_conformity(const Mesh& mesh) {
    ValidationReport report;

    std::unordered_map<std::array<int, 3>, int, TripleHash> face_count;
    face_count.reserve(mesh.tets.size() * 4);
    std::unordered_set<std::int64_t> used_edges;
    used_edges.reserve(mesh.tets.size() * 6);

    static constexpr int faces[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    static constexpr int edges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (const auto& T : mesh.tets) {
        for (const auto& f : faces) {
            std::array<int, 3> key{T.v[f[0]], T.v[f[1]], T.v[f[2]]};
            std::sort(key.begin(), key.end());
            ++face_count[key];
        }
        for (const auto& e : edges) {
            int a = T.v[e[0]], b = T.v[e[1]];
            if (a > b) std::swap(a, b);
            used_edges.insert(pack_edge(a, b));
        }
    }
    for (const auto& [key, count] : face_count) {
        if (count != 1 && count != 2) {
            std::ostringstream os;
            os << "face (" << key[0] << "," << key[1] << "," << key[2] << ") shared by " << count
               << " tets";
            report.violations.push_back({-1, os.str()});
        }
    }

    // A node splitting edge (a,b) while some tet still spans (a,b) directly is
    // a hanging node; two nodes splitting the same edge at different
    // parameters are an inconsistent split.
    std::unordered_map<std::int64_t, double> split_param;
    for (int v = 0; v < mesh.n_points(); ++v) {
        const auto& pr = mesh.provenance[v];
        if (pr.original()) continue;
        const std::int64_t key = pack_edge(pr.a, pr.b);
        if (used_edges.count(key)) {
            std::ostringstream os;
            os << "hanging node " << v << " on edge (" << pr.a << "," << pr.b << ")";
            report.violations.push_back({-1, os.str()});
        }
        auto [it, inserted] = split_param.try_emplace(key, pr.t);
        if (!inserted && std::abs(it->second - pr.t) > 1e-12) {
            std::ostringstream os;
            os << "edge (" << pr.a << "," << pr.b << ") split at both " << it->second << " and "
               << pr.t;
            report.violations.push_back({-1, os.str()});
        }
    }
    return report;
}

}  // namespace gradtet
