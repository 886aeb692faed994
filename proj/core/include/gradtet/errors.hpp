#ifndef GRADTET_ERRORS_HPP
#define GRADTET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gradtet {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define GRADTET_DEFINE_ERROR(Name)                                      \
    struct Name : Error {                                               \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

// mesh-core
GRADTET_DEFINE_ERROR(AmbiguousClassification);
GRADTET_DEFINE_ERROR(MissingParameter);
GRADTET_DEFINE_ERROR(DegenerateChild);
GRADTET_DEFINE_ERROR(ConformityBreak);
// shape-analysis
GRADTET_DEFINE_ERROR(ZeroEdgeLength);
GRADTET_DEFINE_ERROR(FrameMismatch);
GRADTET_DEFINE_ERROR(AncestryError);
// weighted-norms
GRADTET_DEFINE_ERROR(OutOfRange);
GRADTET_DEFINE_ERROR(AtSingularity);
GRADTET_DEFINE_ERROR(ConfigError);
GRADTET_DEFINE_ERROR(UnsupportedOrder);
// fem-poisson
GRADTET_DEFINE_ERROR(DegenerateTet);
GRADTET_DEFINE_ERROR(EmptyInterior);
GRADTET_DEFINE_ERROR(NoConvergence);
GRADTET_DEFINE_ERROR(NotAncestor);
GRADTET_DEFINE_ERROR(MeshMismatch);
GRADTET_DEFINE_ERROR(ZeroDiff);
// io
GRADTET_DEFINE_ERROR(IoError);

#undef GRADTET_DEFINE_ERROR

}  // namespace gradtet

#endif
