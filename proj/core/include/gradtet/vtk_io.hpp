#ifndef GRADTET_VTK_IO_HPP
#define GRADTET_VTK_IO_HPP

#include <iosfwd>
#include <string>

#include "gradtet/fe.hpp"
#include "gradtet/mesh.hpp"

namespace gradtet {

/// Legacy ASCII VTK unstructured grid (cell type 10), with an optional
/// point-data scalar field.
void export_vtk(const Mesh& mesh, std::ostream& out,
                const std::vector<double>* point_scalars = nullptr,
                const std::string& scalar_name = "u");
void export_vtk(const Mesh& mesh, const std::string& path,
                const std::vector<double>* point_scalars = nullptr,
                const std::string& scalar_name = "u");

}  // namespace gradtet

#endif
