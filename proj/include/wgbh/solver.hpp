#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "wgbh/mesh.hpp"
#include "wgbh/problem.hpp"
#include "wgbh/quadrature.hpp"
#include "wgbh/weak_deriv.hpp"
#include "wgbh/weak_function.hpp"

namespace wgbh {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Global numbering of the weak function coefficients. Element interiors come
/// first (condensable), then one (v_b, v_g1, v_g2) block per edge (skeleton).
class DofMap {
public:
    DofMap() = default;
    DofMap(const PolyMesh& mesh, int k);

    int k() const { return k_; }
    int interior_size() const { return interior_size_; }
    int edge_block_size() const { return k_ - 1; }

    int num_dofs() const { return num_interior_ + num_skeleton_; }
    int num_interior_dofs() const { return num_interior_; }
    int num_skeleton_dofs() const { return num_skeleton_; }

    int interior_dof(int element, int m) const { return element * interior_size_ + m; }
    int trace_dof(int edge, int m) const { return num_interior_ + 3 * edge * edge_block_size() + m; }
    int grad_dof(int edge, int c, int m) const
    {
        return num_interior_ + (3 * edge + 1 + c) * edge_block_size() + m;
    }

    bool is_interior(int dof) const { return dof < num_interior_; }
    bool is_constrained(int dof) const { return constrained_[dof] != 0; }
    /// Skeleton DOFs on boundary edges, ascending.
    const std::vector<int>& constrained_dofs() const { return constrained_list_; }
    /// All other DOFs, ascending; element interiors come first.
    const std::vector<int>& free_dofs() const { return free_list_; }

    /// Global indices of an element's local DOFs in LocalElement order.
    std::vector<int> local_to_global(const LocalElement& local) const;

    Eigen::VectorXd to_vector(const WeakFunction& v) const;
    WeakFunction to_weak_function(const Eigen::VectorXd& x, const PolyMesh& mesh) const;

private:
    int k_ = 2;
    int interior_size_ = 0;
    int num_interior_ = 0;
    int num_skeleton_ = 0;
    std::vector<char> constrained_;
    std::vector<int> constrained_list_;
    std::vector<int> free_list_;
};

/// Sparse symmetric matrix and load vector over all DOFs.
struct GlobalSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
};

struct AssembledSystem {
    DofMap dofs;
    GlobalSystem system;
};

/// Assembles (d_w u, d_w v)_h + s(u, v) and (f, v_0) over every element.
AssembledSystem assemble(const PolyMesh& mesh, int k, const BiharmonicProblem& problem,
                         QuadratureDegrees degrees);
AssembledSystem assemble(const PolyMesh& mesh, int k, const BiharmonicProblem& problem);

/// Boundary unknowns u_b = Q_b xi and u_g = (Q_b nu) n + (Q_b grad xi . tau) tau
/// on every boundary edge; zero elsewhere.
Eigen::VectorXd boundary_values(const PolyMesh& mesh, const DofMap& dofs,
                                const BiharmonicProblem& problem, QuadratureDegrees degrees);

/// System on the free DOFs after eliminating the boundary unknowns.
struct ConstrainedSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
    std::vector<int> free_dofs;       // global index of each row
    Eigen::VectorXd boundary_values;  // full length, zero on free DOFs
    int num_interior = 0;             // leading rows that are element interiors
    bool analytic_tangential_derivative = true;
};

ConstrainedSystem apply_boundary_conditions(const PolyMesh& mesh, const GlobalSystem& system,
                                            const DofMap& dofs, const BiharmonicProblem& problem,
                                            QuadratureDegrees degrees);
ConstrainedSystem apply_boundary_conditions(const PolyMesh& mesh, const GlobalSystem& system,
                                            const DofMap& dofs, const BiharmonicProblem& problem);

/// Schur complement of a constrained system onto its skeleton rows.
struct CondensedSystem {
    SparseMatrix matrix;  // skeleton x skeleton
    Eigen::VectorXd rhs;
    SparseMatrix interior_inverse;   // block diagonal, one block per element
    SparseMatrix interior_skeleton;  // interior x skeleton coupling
    Eigen::VectorXd interior_rhs;

    int num_skeleton() const { return static_cast<int>(rhs.size()); }
    /// Back substitution u_I = A_II^-1 (b_I - A_IS u_S).
    Eigen::VectorXd recover_interior(const Eigen::VectorXd& skeleton) const;
};

CondensedSystem condense(const ConstrainedSystem& system, const DofMap& dofs);

enum class LinearSolver { cholesky, cg };

struct SolverOptions {
    bool condense = true;
    LinearSolver method = LinearSolver::cholesky;
    double tolerance = 1e-12;
};

struct LinearSolveResult {
    Eigen::VectorXd x;
    double relative_residual = 0.0;
    int iterations = 0;
    LinearSolver method_used = LinearSolver::cholesky;
};

/// Solves an SPD system to relative residual `tolerance`: sparse Cholesky with
/// iterative refinement, falling back to Jacobi-preconditioned CG.
LinearSolveResult solve_spd(const SparseMatrix& a, const Eigen::VectorXd& b,
                            const SolverOptions& options = {});

struct Solution {
    WeakFunction u;
    /// ||b - A x|| / ||b|| on the constrained (uncondensed) system.
    double relative_residual = 0.0;
    int num_free_dofs = 0;
    int num_condensed_dofs = 0;
    bool analytic_tangential_derivative = true;
};

/// Expands free-DOF values to a weak function, filling in boundary values.
WeakFunction expand_solution(const PolyMesh& mesh, const DofMap& dofs,
                             const ConstrainedSystem& system, const Eigen::VectorXd& free_values);

/// Solves a constrained system, by condensation or directly.
Solution solve(const PolyMesh& mesh, const DofMap& dofs, const ConstrainedSystem& system,
               const SolverOptions& options = {});

/// Assemble, constrain and solve in one call.
Solution solve_biharmonic(const PolyMesh& mesh, int k, const BiharmonicProblem& problem,
                          const SolverOptions& options = {});

}  // namespace wgbh
