#ifndef GRADTET_QUADRATURE_HPP
#define GRADTET_QUADRATURE_HPP

#include <vector>

#include "gradtet/geometry.hpp"

namespace gradtet {

/// Quadrature rule on the reference tetrahedron conv{0, e1, e2, e3}, stored
/// as barycentric-free reference coordinates with weights summing to 1 (the
/// reference volume is 1/6).  All points are strictly interior, so weight
/// functions with negative exponents stay finite.
struct TetQuadrature {
    struct Node {
        Point p;
        double w;
    };
    std::vector<Node> nodes;
    int degree = 0;

    /// Smallest embedded rule exact for polynomials of the given total
    /// degree: symmetric 1/4/14-point rules up to degree 5, a collapsed
    /// Gauss-Legendre product rule beyond.
    static const TetQuadrature& for_degree(int degree);
};

/// Gauss-Legendre nodes/weights on (0,1).
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace gradtet

#endif
