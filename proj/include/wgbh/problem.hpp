#pragma once

#include <functional>

#include "wgbh/weak_function.hpp"

namespace wgbh {

/// Boundary datum that depends on a direction, e.g. d u / d n at x for the
/// outward normal n.
using DirectionalField = std::function<double(const Point& x, const Point& direction)>;

/// Biharmonic problem  Laplace^2 u = f in Omega,  u = xi and du/dn = nu on
/// the boundary.
struct BiharmonicProblem {
    ScalarField f;
    ScalarField xi;
    DirectionalField nu;
    /// Tangential derivative of xi, grad(xi) . tau. When empty it is obtained
    /// by differentiating xi along each boundary edge.
    DirectionalField grad_xi_tau;

    bool has_analytic_tangential_derivative() const { return static_cast<bool>(grad_xi_tau); }
};

/// Fourth-order central difference of xi along `direction` at x, with step
/// `step` in arclength.
double tangential_derivative(const ScalarField& xi, const Point& x, const Point& direction,
                             double step);

}  // namespace wgbh
