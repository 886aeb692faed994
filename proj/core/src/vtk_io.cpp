#include "gradtet/vtk_io.hpp"

#include <cstdio>
#include <fstream>

#include "gradtet/errors.hpp"

namespace gradtet {

void export_vtk(const Mesh& mesh, std::ostream& out, const std::vector<double>* point_scalars,
                const std::string& scalar_name) {
    char buf[128];
    out << "# vtk DataFile Version 3.0\n";
    out << "gradtet mesh level " << mesh.level << "\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.points.size() << " double\n";
    for (const auto& p : mesh.points) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
        out << buf;
    }
    out << "CELLS " << mesh.tets.size() << " " << mesh.tets.size() * 5 << "\n";
    for (const auto& t : mesh.tets)
        out << "4 " << t.v[0] << " " << t.v[1] << " " << t.v[2] << " " << t.v[3] << "\n";
    out << "CELL_TYPES " << mesh.tets.size() << "\n";
    for (std::size_t i = 0; i < mesh.tets.size(); ++i) out << "10\n";
    if (point_scalars) {
        if (point_scalars->size() != mesh.points.size())
            throw IoError("point scalar count does not match vertex count");
        out << "POINT_DATA " << mesh.points.size() << "\n";
        out << "SCALARS " << scalar_name << " double 1\n";
        out << "LOOKUP_TABLE default\n";
        for (double v : *point_scalars) {
            std::snprintf(buf, sizeof buf, "%.17g\n", v);
            out << buf;
        }
    }
}

void export_vtk(const Mesh& mesh, const std::string& path,
                const std::vector<double>* point_scalars, const std::string& scalar_name) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    export_vtk(mesh, out, point_scalars, scalar_name);
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace gradtet
