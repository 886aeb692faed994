#include "gradtet/grading.hpp"

#include <algorithm>
#include <cmath>

#include "gradtet/errors.hpp"

namespace gradtet {

double kappa_from_a(double a, int m) {
    if (m < 1) throw OutOfRange("polynomial degree m must be >= 1");
    if (!(a > 0.0 && a <= static_cast<double>(m)))
        throw OutOfRange("exponent a must lie in (0, m]");
    return std::exp2(-static_cast<double>(m) / a);
}

double a_from_kappa(double kappa, int m) {
    if (m < 1) throw OutOfRange("polynomial degree m must be >= 1");
    if (!(kappa > 0.0 && kappa <= 0.5)) throw OutOfRange("kappa must lie in (0, 1/2]");
    return -static_cast<double>(m) / std::log2(kappa);
}

VertexExponents compute_aV(double a_v, const std::vector<double>& a_edges, int m) {
    double a_ev = a_v;
    for (double ae : a_edges) a_ev = std::min(a_ev, ae);
    VertexExponents out;
    out.a_ev = a_ev;
    out.a_V = (m + 1) * (1.0 - a_ev / a_v) + a_ev;
    return out;
}

}  // namespace gradtet
