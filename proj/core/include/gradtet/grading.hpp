#ifndef GRADTET_GRADING_HPP
#define GRADTET_GRADING_HPP

#include <vector>

namespace gradtet {

/// Grading parameter from the exponent: kappa = 2^(-m/a), a in (0, m].
double kappa_from_a(double a, int m);
/// Inverse: a = -m / log2(kappa), kappa in (0, 1/2].
double a_from_kappa(double kappa, int m);

/// Effective vertex exponents: a_ev = min(a_v, min of the touching edges'
/// exponents) and a_V = (m+1)(1 - a_ev/a_v) + a_ev >= a_v.
struct VertexExponents {
    double a_ev = 0.0;
    double a_V = 0.0;
};
VertexExponents compute_aV(double a_v, const std::vector<double>& a_edges, int m);

/// Per-entity exponent vector with the derived vertex quantities.
struct GradingExponents {
    std::vector<double> a;           // one exponent per singular entity
    int m = 1;                       // intended polynomial degree
    std::vector<double> a_ev;        // per vertex entity
    std::vector<double> a_V;         // per vertex entity
};

}  // namespace gradtet

#endif
