#ifndef GRADTET_CONFORMITY_HPP
#define GRADTET_CONFORMITY_HPP

#include "gradtet/classify.hpp"
#include "gradtet/mesh.hpp"

namespace gradtet {

/// Conformity report: faces shared by more than two tets, hanging nodes
/// (a vertex whose provenance splits an edge that some tet still uses
/// unsplit), and duplicate provenance records with inconsistent split
/// parameters.  Empty report = conforming.
ValidationReport check_conformity(const Mesh& mesh);

}  // namespace gradtet

#endif
