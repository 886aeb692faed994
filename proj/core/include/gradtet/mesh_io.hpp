#ifndef GRADTET_MESH_IO_HPP
#define GRADTET_MESH_IO_HPP

#include <iosfwd>
#include <string>

#include "gradtet/mesh.hpp"

namespace gradtet {

/// Versioned line-oriented text format (see docs/mesh-format.md).
/// Coordinates and split parameters are printed with 17 significant digits so
/// a write/read/write round trip is bit identical.
void save_mesh(const Mesh& mesh, std::ostream& out);
void save_mesh(const Mesh& mesh, const std::string& path);

Mesh load_mesh(std::istream& in);
Mesh load_mesh(const std::string& path);

}  // namespace gradtet

#endif
