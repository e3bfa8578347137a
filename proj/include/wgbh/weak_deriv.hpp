#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "wgbh/basis.hpp"
#include "wgbh/quadrature.hpp"
#include "wgbh/weak_function.hpp"

namespace wgbh {

class WeakDerivError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-element data for a degree-k weak function space.
///
/// Local DOF ordering: the P_k(T) interior block first, then for each edge of
/// the element in counterclockwise order the sub-blocks (v_b, v_g1, v_g2),
/// each of size k - 1. Edge sub-blocks use the edge's global orientation, so
/// both neighbors of an interior edge read the same coefficients.
class LocalElement {
public:
    LocalElement(const PolyMesh& mesh, int element, int k);
    LocalElement(const PolyMesh& mesh, int element, int k, QuadratureDegrees degrees);

    int element() const { return element_; }
    int k() const { return k_; }
    double diameter() const { return diameter_; }
    /// Size h_T weighting the stabilizer, sqrt(2 |T|). Equals the diameter on
    /// squares and the leg length on right isosceles triangles.
    double size() const { return size_; }
    int num_edges() const { return static_cast<int>(edge_ids_.size()); }
    int edge_id(int local) const { return edge_ids_[local]; }
    const Point& normal(int local) const { return normals_[local]; }
    double edge_length(int local) const { return lengths_[local]; }

    int interior_size() const { return basis_k_.size(); }
    int edge_block_size() const { return k_ - 1; }
    int num_local_dofs() const { return interior_size() + 3 * num_edges() * edge_block_size(); }
    /// Offset of v_b on local edge `a`; v_g1 and v_g2 follow it.
    int trace_offset(int a) const { return interior_size() + 3 * a * edge_block_size(); }
    int grad_offset(int a, int c) const { return trace_offset(a) + (1 + c) * edge_block_size(); }

    const ElementBasis& interior_basis() const { return basis_k_; }
    const ElementBasis& test_basis() const { return basis_r_; }
    const EdgeBasis& edge_basis() const { return edge_basis_; }
    const QuadratureRule& rule() const { return rule_; }
    const EdgeQuadratureRule& edge_rule(int local) const { return edge_rules_[local]; }

    /// Gram matrix of P_{k-2}(T) and its factorization (shared by all four
    /// weak derivative operators).
    const Eigen::MatrixXd& test_gram() const { return gram_r_; }
    const Eigen::LLT<Eigen::MatrixXd>& test_gram_factor() const { return gram_r_llt_; }

    /// Edge Legendre mass diagonal on local edge `a`.
    Eigen::VectorXd edge_mass(int a) const { return edge_basis_.mass_diagonal(lengths_[a]); }

    /// Maps v_0 coefficients to Q_b(v_0) on local edge `a`.
    const Eigen::MatrixXd& trace_projection(int a) const { return trace_proj_[a]; }
    /// Maps v_0 coefficients to Q_b(d v_0 / d x_c) on local edge `a`.
    const Eigen::MatrixXd& gradient_projection(int a, int c) const { return grad_proj_[a][c]; }

    /// Stacks the element's local DOFs out of a global weak function.
    Eigen::VectorXd gather(const WeakFunction& v) const;

private:
    int element_ = -1;
    int k_ = 2;
    double diameter_ = 0.0;
    double size_ = 0.0;
    std::vector<int> edge_ids_;
    std::vector<Point> normals_;
    std::vector<double> lengths_;
    ElementBasis basis_k_;
    ElementBasis basis_r_;
    EdgeBasis edge_basis_;
    QuadratureRule rule_;
    std::vector<EdgeQuadratureRule> edge_rules_;
    Eigen::MatrixXd gram_r_;
    Eigen::LLT<Eigen::MatrixXd> gram_r_llt_;
    std::vector<Eigen::MatrixXd> trace_proj_;
    std::vector<std::array<Eigen::MatrixXd, 2>> grad_proj_;
};

/// Discrete weak second partial d^2_{ij,w}: maps stacked local DOFs to
/// P_{k-2}(T) coefficients. Indices i, j are 0-based (0 = x, 1 = y).
struct LocalWeakDerivOp {
    int element = -1;
    int i = 0;
    int j = 0;
    Eigen::MatrixXd matrix;  // poly_dim(k-2) x num_local_dofs
};

/// Solves (d_w v, phi)_T = (v_0, d_ji phi)_T - <v_b n_i, d_j phi> + <v_gi, phi n_j>
/// for every phi in P_{k-2}(T).
LocalWeakDerivOp build_weak_deriv(const LocalElement& local, int i, int j);

/// All four operators, ordered (0,0), (0,1), (1,0), (1,1).
std::array<LocalWeakDerivOp, 4> build_weak_derivs(const LocalElement& local);

/// Coefficients of d^2_{ij,w} v for stacked local DOFs `v`.
Eigen::VectorXd apply_weak_deriv(const LocalWeakDerivOp& op, const Eigen::VectorXd& v);

/// Residual of the integration-by-parts identity
///   (d_w v, phi) = (d_ij v_0, phi) + <v_0 - v_b, d_j phi n_i> - <d_i v_0 - v_gi, phi n_j>
/// maximized over the P_{k-2}(T) basis; the right side is integrated directly.
double check_parts_identity(const LocalElement& local, const Eigen::VectorXd& v, int i, int j);

/// Same identity with the edge projections Q_b v_0 and Q_b(d_i v_0) in place
/// of the raw traces.
double check_projected_parts_identity(const LocalElement& local, const Eigen::VectorXd& v, int i, int j);

/// Local stabilizer matrix:
///   h_T^-1 <Q_b grad v_0 - v_g, .>_{dT} + h_T^-3 <Q_b v_0 - v_b, .>_{dT}.
Eigen::MatrixXd local_stabilizer(const LocalElement& local);

/// Local bilinear form sum_ij (d_w u, d_w v)_T + s_T(u, v), exactly symmetric.
Eigen::MatrixXd local_stiffness(const LocalElement& local);

}  // namespace wgbh
