#include "gradtet/mesh_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gradtet/errors.hpp"

namespace gradtet {

namespace {

constexpr const char* kMagic = "gradtet-mesh";
constexpr int kVersion = 1;

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string next_line(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("unexpected end of mesh file");
    return line;
}

}  // namespace

void save_mesh(const Mesh& mesh, std::ostream& out) {
    out << kMagic << " " << kVersion << "\n";
    out << "level " << mesh.level << "\n";
    out << "points " << mesh.points.size() << "\n";
    for (const auto& p : mesh.points)
        out << g17(p.x) << " " << g17(p.y) << " " << g17(p.z) << "\n";
    out << "tets " << mesh.tets.size() << "\n";
    for (const auto& t : mesh.tets)
        out << t.v[0] << " " << t.v[1] << " " << t.v[2] << " " << t.v[3] << " "
            << to_string(t.type) << " " << t.sv << " " << t.se << " "
            << (t.edge_forward ? 1 : 0) << "\n";
    out << "provenance " << mesh.provenance.size() << "\n";
    for (const auto& pr : mesh.provenance)
        out << pr.a << " " << pr.b << " " << g17(pr.t) << "\n";
    out << "facets " << mesh.vertex_facets.size() << "\n";
    for (auto f : mesh.vertex_facets) out << f << "\n";
}

void save_mesh(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    save_mesh(mesh, out);
    if (!out) throw IoError("write failed for '" + path + "'");
}

Mesh load_mesh(std::istream& in) {
    Mesh mesh;
    {
        std::istringstream h(next_line(in));
        std::string magic;
        int version = 0;
        h >> magic >> version;
        if (magic != kMagic) throw IoError("not a gradtet mesh file");
        if (version != kVersion)
            throw IoError("unsupported mesh format version " + std::to_string(version));
    }
    auto expect_count = [&](const char* section) {
        std::istringstream h(next_line(in));
        std::string word;
        std::int64_t count = -1;
        h >> word >> count;
        if (word != section || count < 0)
            throw IoError(std::string("expected '") + section + " <count>'");
        return count;
    };
    {
        std::istringstream h(next_line(in));
        std::string word;
        h >> word >> mesh.level;
        if (word != "level") throw IoError("expected 'level <n>'");
    }
    const auto np = expect_count("points");
    mesh.points.resize(np);
    for (auto& p : mesh.points) {
        std::istringstream h(next_line(in));
        if (!(h >> p.x >> p.y >> p.z)) throw IoError("bad point line");
    }
    const auto nt = expect_count("tets");
    mesh.tets.resize(nt);
    for (auto& t : mesh.tets) {
        std::istringstream h(next_line(in));
        std::string type;
        int fwd = 1;
        if (!(h >> t.v[0] >> t.v[1] >> t.v[2] >> t.v[3] >> type >> t.sv >> t.se >> fwd))
            throw IoError("bad tet line");
        t.type = tet_type_from_string(type);
        t.edge_forward = fwd != 0;
    }
    const auto npr = expect_count("provenance");
    if (npr != np) throw IoError("provenance count must equal point count");
    mesh.provenance.resize(npr);
    for (auto& pr : mesh.provenance) {
        std::istringstream h(next_line(in));
        if (!(h >> pr.a >> pr.b >> pr.t)) throw IoError("bad provenance line");
    }
    const auto nf = expect_count("facets");
    if (nf != 0 && nf != np) throw IoError("facet count must be 0 or the point count");
    mesh.vertex_facets.resize(nf);
    for (auto& f : mesh.vertex_facets) {
        std::istringstream h(next_line(in));
        if (!(h >> f)) throw IoError("bad facet line");
    }
    return mesh;
}

Mesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return load_mesh(in);
}

}  // namespace gradtet
