#ifndef GRADTET_WEIGHTED_NORM_HPP
#define GRADTET_WEIGHTED_NORM_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "gradtet/mesh.hpp"
#include "gradtet/region.hpp"
#include "gradtet/singular_set.hpp"

namespace gradtet {

/// Value and derivatives of a scalar field at a point, in Cartesian
/// coordinates.  Hessian order: (xx, yy, zz, xy, xz, yz).
struct DerivBundle {
    double value = 0.0;
    Vec3 grad{};
    std::array<double, 6> hess{};
};

/// A field that can supply derivatives up to some order.  Analytic callables
/// supply exact derivatives; P1 finite element functions support order 1.
class DerivativeField {
public:
    virtual ~DerivativeField() = default;
    virtual int max_order() const = 0;
    virtual DerivBundle eval(std::int64_t tet, const Point& p, int order) const = 0;
};

class AnalyticField final : public DerivativeField {
public:
    using ValueFn = std::function<double(const Point&)>;
    using GradFn = std::function<Vec3(const Point&)>;
    using HessFn = std::function<std::array<double, 6>(const Point&)>;

    explicit AnalyticField(ValueFn value, GradFn grad = nullptr, HessFn hess = nullptr)
        : value_(std::move(value)), grad_(std::move(grad)), hess_(std::move(hess)) {}

    int max_order() const override { return hess_ ? 2 : (grad_ ? 1 : 0); }
    DerivBundle eval(std::int64_t, const Point& p, int order) const override;

private:
    ValueFn value_;
    GradFn grad_;
    HessFn hess_;
};

/// P1 nodal field over a mesh: piecewise linear, tet-wise constant gradient.
class P1Field final : public DerivativeField {
public:
    P1Field(const Mesh& mesh, const std::vector<double>& coeffs);

    int max_order() const override { return 1; }
    DerivBundle eval(std::int64_t tet, const Point& p, int order) const override;

private:
    const Mesh& mesh_;
    const std::vector<double>& coeffs_;
};

/// Per-order breakdown of the anisotropic weighted norm: `parts[k]` is the
/// contribution of derivatives of total order k (squared sums, already
/// rooted), `total` the full norm.
struct WeightedNormResult {
    double total = 0.0;
    std::array<double, 3> parts{0.0, 0.0, 0.0};
};

/// Quadrature evaluation of the anisotropic weighted norm of order m with
/// weight exponents mu (one per singular entity).  Region-dependent weights:
/// rho_v^(|a|-mu_v) near vertices, rho_e^(|a_perp|-mu_e) near edges with the
/// transverse multi-index taken in the edge's local frame,
/// rho_v^(|a|-mu_v) * rho_{e,v}^(|a_perp|-mu_e) in the edge-near-vertex
/// sectors, and the plain Sobolev integrand in the interior.
WeightedNormResult weighted_norm(const Mesh& mesh, const DerivativeField& u,
                                 const SingularSet& S, const std::vector<double>& mu, int m,
                                 const DomainDecomposition& regions, int quad_degree = 4);

}  // namespace gradtet

#endif
