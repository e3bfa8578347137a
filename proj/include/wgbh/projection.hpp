#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "wgbh/basis.hpp"
#include "wgbh/quadrature.hpp"
#include "wgbh/weak_function.hpp"

namespace wgbh {

class ProjectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// L2 projection of f onto span(basis) under `rule`, via the Gram system.
Eigen::VectorXd l2_project(const ElementBasis& basis, const QuadratureRule& rule,
                           const ScalarField& f);

/// Q_0: projection onto P_k(T). `quad_degree` < 0 selects the default rule.
Eigen::VectorXd project_Q0(const PolyMesh& mesh, int element, const ScalarField& f, int k,
                           int quad_degree = -1);

/// Local projection onto P_{k-2}(T).
Eigen::VectorXd project_calQh(const PolyMesh& mesh, int element, const ScalarField& g, int k,
                              int quad_degree = -1);

/// Q_b: projection onto P_degree(e) in the edge's Legendre basis.
Eigen::VectorXd project_Qb(const PolyMesh& mesh, int edge, const ScalarField& g, int degree,
                           int quad_degree = -1);

/// Componentwise Q_b of a vector field; column c holds component c.
Eigen::MatrixX2d project_Qb_vector(const PolyMesh& mesh, int edge, const VectorField& g, int degree,
                                   int quad_degree = -1);

/// Q_h u = {Q_0 u, Q_b u, Q_b(grad u)} on every element and edge.
WeakFunction project_Qh(const PolyMesh& mesh, int k, const ScalarField& u, const VectorField& grad_u,
                        QuadratureDegrees degrees);
WeakFunction project_Qh(const PolyMesh& mesh, int k, const ScalarField& u, const VectorField& grad_u);

}  // namespace wgbh
