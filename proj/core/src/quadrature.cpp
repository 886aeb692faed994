#include "gradtet/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "gradtet/errors.hpp"

namespace gradtet {

void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    // Newton on Legendre polynomials over [-1,1], then map to (0,1).
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = 0.5 * (1.0 + t);
        w[i] = 1.0 / ((1.0 - t * t) * pp * pp);
    }
}

namespace {

TetQuadrature centroid_rule() {
    TetQuadrature q;
    q.degree = 1;
    q.nodes = {{{0.25, 0.25, 0.25}, 1.0}};
    return q;
}

// Four-point degree-2 rule: barycentric (a,b,b,b) with
// a = (5 + 3*sqrt(5))/20, b = (5 - sqrt(5))/20.
TetQuadrature four_point_rule() {
    TetQuadrature q;
    q.degree = 2;
    const double a = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
    const double b = (5.0 - std::sqrt(5.0)) / 20.0;
    const double bary[4][4] = {
        {a, b, b, b}, {b, a, b, b}, {b, b, a, b}, {b, b, b, a}};
    for (const auto& l : bary) q.nodes.push_back({{l[1], l[2], l[3]}, 0.25});
    return q;
}

// Fourteen-point degree-5 rule with positive weights (two vertex orbits and
// one edge orbit); exactness is verified by the unit tests against monomial
// integrals.
TetQuadrature fourteen_point_rule() {
    TetQuadrature q;
    q.degree = 5;
    struct Orbit4 {
        double a, w;
    };
    const Orbit4 orbit4[] = {
        {0.3108859192633005, 0.1126879257180162},
        {0.0927352503108912, 0.0734930431163619},
    };
    for (const auto& o : orbit4) {
        const double b = o.a;             // three equal coordinates
        const double a = 1.0 - 3.0 * b;   // apex coordinate
        const double l[4][4] = {
            {a, b, b, b}, {b, a, b, b}, {b, b, a, b}, {b, b, b, a}};
        for (const auto& li : l) q.nodes.push_back({{li[1], li[2], li[3]}, o.w});
    }
    const double c = 0.0455037041256497;  // orbit (a,a,b,b), a = (1 - 2c)/2... a = 0.4544962958743503
    const double a2 = 0.5 - c;
    const double w6 = 0.0425460207770812;
    const double pairs[6][4] = {
        {a2, a2, c, c}, {a2, c, a2, c}, {a2, c, c, a2},
        {c, a2, a2, c}, {c, a2, c, a2}, {c, c, a2, a2}};
    for (const auto& li : pairs) q.nodes.push_back({{li[1], li[2], li[3]}, w6});
    return q;
}

// Collapsed Gauss-Legendre product rule: exact to the requested degree for
// any degree, with strictly interior nodes.
TetQuadrature duffy_rule(int degree) {
    TetQuadrature q;
    q.degree = degree;
    const int n = (degree + 4) / 2;  // ceil((degree+3)/2)
    std::vector<double> x, w;
    gauss_legendre_01(n, x, w);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double u = x[i], v = x[j], s = x[k];
                const Point p{u, v * (1.0 - u), s * (1.0 - u) * (1.0 - v)};
                // Jacobian (1-u)^2 (1-v) against reference volume 1/6.
                const double weight =
                    6.0 * w[i] * w[j] * w[k] * (1.0 - u) * (1.0 - u) * (1.0 - v);
                q.nodes.push_back({p, weight});
            }
    return q;
}

}  // namespace

const TetQuadrature& TetQuadrature::for_degree(int degree) {
    if (degree < 0) throw OutOfRange("quadrature degree must be non-negative");
    static std::map<int, TetQuadrature> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(degree);
    if (it != cache.end()) return it->second;
    TetQuadrature q;
    if (degree <= 1)
        q = centroid_rule();
    else if (degree <= 2)
        q = four_point_rule();
    else if (degree <= 5)
        q = fourteen_point_rule();
    else
        q = duffy_rule(degree);
    return cache.emplace(degree, std::move(q)).first->second;
}

}  // namespace gradtet
