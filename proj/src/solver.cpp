#include "wgbh/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "wgbh/projection.hpp"

namespace wgbh {

DofMap::DofMap(const PolyMesh& mesh, int k)
    : k_(k), interior_size_(poly_dim(k))
{
    if (k < 2) throw std::invalid_argument("weak Galerkin degree k must be >= 2");
    num_interior_ = mesh.num_elements() * interior_size_;
    num_skeleton_ = mesh.num_edges() * 3 * edge_block_size();
    constrained_.assign(num_dofs(), 0);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        if (!mesh.edge(e).is_boundary) continue;
        for (int m = 0; m < 3 * edge_block_size(); ++m) constrained_[trace_dof(e, m)] = 1;
    }
    for (int d = 0; d < num_dofs(); ++d)
        (constrained_[d] ? constrained_list_ : free_list_).push_back(d);
}

std::vector<int> DofMap::local_to_global(const LocalElement& local) const
{
    std::vector<int> ids;
    ids.reserve(local.num_local_dofs());
    for (int m = 0; m < interior_size_; ++m) ids.push_back(interior_dof(local.element(), m));
    for (int a = 0; a < local.num_edges(); ++a)
        for (int m = 0; m < 3 * edge_block_size(); ++m) ids.push_back(trace_dof(local.edge_id(a), m));
    return ids;
}

Eigen::VectorXd DofMap::to_vector(const WeakFunction& v) const
{
    if (v.k != k_) throw std::invalid_argument("weak function degree does not match DOF map");
    Eigen::VectorXd x(num_dofs());
    const int m = edge_block_size();
    for (int t = 0; t < v.interior.rows(); ++t)
        x.segment(interior_dof(t, 0), interior_size_) = v.interior.row(t).transpose();
    for (int e = 0; e < v.trace.rows(); ++e) {
        x.segment(trace_dof(e, 0), m) = v.trace.row(e).transpose();
        x.segment(grad_dof(e, 0, 0), m) = v.grad_x.row(e).transpose();
        x.segment(grad_dof(e, 1, 0), m) = v.grad_y.row(e).transpose();
    }
    return x;
}

WeakFunction DofMap::to_weak_function(const Eigen::VectorXd& x, const PolyMesh& mesh) const
{
    if (x.size() != num_dofs()) throw std::invalid_argument("coefficient vector has wrong length");
    WeakFunction v = WeakFunction::zero(mesh, k_);
    const int m = edge_block_size();
    for (int t = 0; t < mesh.num_elements(); ++t)
        v.interior.row(t) = x.segment(interior_dof(t, 0), interior_size_).transpose();
    for (int e = 0; e < mesh.num_edges(); ++e) {
        v.trace.row(e) = x.segment(trace_dof(e, 0), m).transpose();
        v.grad_x.row(e) = x.segment(grad_dof(e, 0, 0), m).transpose();
        v.grad_y.row(e) = x.segment(grad_dof(e, 1, 0), m).transpose();
    }
    return v;
}

AssembledSystem assemble(const PolyMesh& mesh, int k, const BiharmonicProblem& problem)
{
    return assemble(mesh, k, problem, QuadratureDegrees::for_degree(k));
}

AssembledSystem assemble(const PolyMesh& mesh, int k, const BiharmonicProblem& problem,
                         QuadratureDegrees degrees)
{
    AssembledSystem out{DofMap(mesh, k), {}};
    const DofMap& dofs = out.dofs;
    const int n = dofs.num_dofs();

    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int t = 0; t < mesh.num_elements(); ++t) {
        const LocalElement local(mesh, t, k, degrees);
        const Eigen::MatrixXd ke = local_stiffness(local);
        const auto ids = dofs.local_to_global(local);
        const int nl = static_cast<int>(ids.size());
        if (t == 0) triplets.reserve(static_cast<std::size_t>(mesh.num_elements()) * nl * nl);
        for (int c = 0; c < nl; ++c)
            for (int r = 0; r < nl; ++r) triplets.emplace_back(ids[r], ids[c], ke(r, c));

        if (problem.f) {
            const auto& basis = local.interior_basis();
            const auto& rule = local.rule();
            Eigen::VectorXd fe = Eigen::VectorXd::Zero(basis.size());
            for (std::size_t q = 0; q < rule.size(); ++q)
                fe += (rule.weights[q] * problem.f(rule.points[q])) * basis.values(rule.points[q]);
            rhs.segment(dofs.interior_dof(t, 0), basis.size()) += fe;
        }
    }
    out.system.matrix.resize(n, n);
    out.system.matrix.setFromTriplets(triplets.begin(), triplets.end());
    out.system.rhs = std::move(rhs);
    return out;
}

Eigen::VectorXd boundary_values(const PolyMesh& mesh, const DofMap& dofs,
                                const BiharmonicProblem& problem, QuadratureDegrees degrees)
{
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dofs.num_dofs());
    const int r = dofs.k() - 2;
    const int m = dofs.edge_block_size();
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& edge = mesh.edge(e);
        if (!edge.is_boundary) continue;
        const Point n = edge.normals[0];
        const Point tau = edge.unit_tangent;

        const Eigen::VectorXd ub =
            problem.xi ? project_Qb(mesh, e, problem.xi, r, degrees.edge) : Eigen::VectorXd::Zero(m);
        Eigen::VectorXd normal_part = Eigen::VectorXd::Zero(m);
        if (problem.nu)
            normal_part = project_Qb(
                mesh, e, [&](const Point& x) { return problem.nu(x, n); }, r, degrees.edge);
        Eigen::VectorXd tangent_part = Eigen::VectorXd::Zero(m);
        if (problem.grad_xi_tau) {
            tangent_part = project_Qb(
                mesh, e, [&](const Point& x) { return problem.grad_xi_tau(x, tau); }, r,
                degrees.edge);
        } else if (problem.xi) {
            const double step = 1e-2 * edge.length;
            tangent_part = project_Qb(
                mesh, e,
                [&](const Point& x) { return tangential_derivative(problem.xi, x, tau, step); }, r,
                degrees.edge);
        }

        for (int q = 0; q < m; ++q) {
            if (!(std::isfinite(ub[q]) && std::isfinite(normal_part[q]) &&
                  std::isfinite(tangent_part[q])))
                throw SolverError("non-finite boundary data on edge " + std::to_string(e));
            g[dofs.trace_dof(e, q)] = ub[q];
            g[dofs.grad_dof(e, 0, q)] = normal_part[q] * n.x() + tangent_part[q] * tau.x();
            g[dofs.grad_dof(e, 1, q)] = normal_part[q] * n.y() + tangent_part[q] * tau.y();
        }
    }
    return g;
}

namespace {

SparseMatrix selection_matrix(const std::vector<int>& rows, int n)
{
    SparseMatrix p(static_cast<Eigen::Index>(rows.size()), n);
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) t.emplace_back(static_cast<int>(i), rows[i], 1.0);
    p.setFromTriplets(t.begin(), t.end());
    return p;
}

}  // namespace

ConstrainedSystem apply_boundary_conditions(const PolyMesh& mesh, const GlobalSystem& system,
                                            const DofMap& dofs, const BiharmonicProblem& problem)
{
    return apply_boundary_conditions(mesh, system, dofs, problem,
                                     QuadratureDegrees::for_degree(dofs.k()));
}

ConstrainedSystem apply_boundary_conditions(const PolyMesh& mesh, const GlobalSystem& system,
                                            const DofMap& dofs, const BiharmonicProblem& problem,
                                            QuadratureDegrees degrees)
{
    ConstrainedSystem out;
    out.boundary_values = boundary_values(mesh, dofs, problem, degrees);
    out.free_dofs = dofs.free_dofs();
    out.num_interior = dofs.num_interior_dofs();
    out.analytic_tangential_derivative = problem.has_analytic_tangential_derivative();

    const SparseMatrix p = selection_matrix(out.free_dofs, dofs.num_dofs());
    // Selection only copies entries, so the reduced matrix stays exactly symmetric.
    out.matrix = p * system.matrix * p.transpose();
    out.rhs = p * (system.rhs - system.matrix * out.boundary_values);
    return out;
}

Eigen::VectorXd CondensedSystem::recover_interior(const Eigen::VectorXd& skeleton) const
{
    return interior_inverse * (interior_rhs - interior_skeleton * skeleton);
}

CondensedSystem condense(const ConstrainedSystem& system, const DofMap& dofs)
{
    const int ni = system.num_interior;
    const int nf = static_cast<int>(system.rhs.size());
    const int ns = nf - ni;
    const int bs = dofs.interior_size();
    const int num_elements = ni / bs;

    const SparseMatrix a_ii = system.matrix.topLeftCorner(ni, ni);

    std::vector<Eigen::MatrixXd> blocks(num_elements, Eigen::MatrixXd::Zero(bs, bs));
    for (int col = 0; col < a_ii.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(a_ii, col); it; ++it) {
            const int t = static_cast<int>(it.row()) / bs;
            if (t != col / bs)
                throw SolverError("interior unknowns of elements " + std::to_string(t) + " and " +
                                  std::to_string(col / bs) + " are coupled");
            blocks[t](it.row() - t * bs, col - t * bs) = it.value();
        }
    }

    std::vector<Eigen::Triplet<double>> inv_triplets;
    inv_triplets.reserve(static_cast<std::size_t>(num_elements) * bs * bs);
    for (int t = 0; t < num_elements; ++t) {
        Eigen::LLT<Eigen::MatrixXd> llt(blocks[t]);
        if (llt.info() != Eigen::Success)
            throw SolverError("interior block of element " + std::to_string(t) +
                              " is not invertible");
        const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(bs, bs));
        for (int c = 0; c < bs; ++c)
            for (int r = 0; r < bs; ++r)
                inv_triplets.emplace_back(t * bs + r, t * bs + c, 0.5 * (inv(r, c) + inv(c, r)));
    }

    CondensedSystem out;
    out.interior_inverse.resize(ni, ni);
    out.interior_inverse.setFromTriplets(inv_triplets.begin(), inv_triplets.end());
    out.interior_skeleton = system.matrix.topRightCorner(ni, ns);
    out.interior_rhs = system.rhs.head(ni);

    const SparseMatrix a_ss = system.matrix.bottomRightCorner(ns, ns);
    const SparseMatrix coupling = out.interior_inverse * out.interior_skeleton;
    SparseMatrix schur = a_ss - SparseMatrix(out.interior_skeleton.transpose()) * coupling;
    out.matrix = 0.5 * (schur + SparseMatrix(schur.transpose()));
    out.matrix.prune(0.0);
    out.rhs = system.rhs.tail(ns) -
              out.interior_skeleton.transpose() * (out.interior_inverse * out.interior_rhs);
    return out;
}

namespace {

double relative_residual(const SparseMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b)
{
    const double bn = b.norm();
    const double rn = (b - a * x).norm();
    return bn > 0.0 ? rn / bn : rn;
}

LinearSolveResult run_cg(const SparseMatrix& a, const Eigen::VectorXd& b, const Eigen::VectorXd& x0,
                         const SolverOptions& options)
{
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(options.tolerance);
    cg.setMaxIterations(
        std::max(1, static_cast<int>(20.0 * std::sqrt(static_cast<double>(b.size())))));
    cg.compute(a);
    LinearSolveResult res;
    res.x = cg.solveWithGuess(b, x0);
    res.iterations = static_cast<int>(cg.iterations());
    res.method_used = LinearSolver::cg;
    res.relative_residual = relative_residual(a, res.x, b);
    return res;
}

}  // namespace

LinearSolveResult solve_spd(const SparseMatrix& a, const Eigen::VectorXd& b,
                            const SolverOptions& options)
{
    LinearSolveResult res;
    if (b.size() == 0) {
        res.x = Eigen::VectorXd();
        return res;
    }
    if (b.norm() == 0.0) {
        res.x = Eigen::VectorXd::Zero(b.size());
        return res;
    }

    if (options.method == LinearSolver::cg)
        return run_cg(a, b, Eigen::VectorXd::Zero(b.size()), options);

    Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
    llt.compute(a);
    if (llt.info() != Eigen::Success)
        throw SolverError("Cholesky factorization failed: matrix is not symmetric positive definite");

    res.x = llt.solve(b);
    res.relative_residual = relative_residual(a, res.x, b);
    // iterative refinement against the same factor
    for (int it = 0; it < 5 && res.relative_residual > options.tolerance; ++it) {
        res.x += llt.solve(b - a * res.x);
        res.relative_residual = relative_residual(a, res.x, b);
        res.iterations = it + 1;
    }
    if (res.relative_residual > options.tolerance) {
        auto cg = run_cg(a, b, res.x, options);
        if (cg.relative_residual < res.relative_residual) return cg;
    }
    return res;
}

WeakFunction expand_solution(const PolyMesh& mesh, const DofMap& dofs,
                             const ConstrainedSystem& system, const Eigen::VectorXd& free_values)
{
    Eigen::VectorXd x = system.boundary_values;
    for (std::size_t i = 0; i < system.free_dofs.size(); ++i)
        x[system.free_dofs[i]] = free_values[static_cast<Eigen::Index>(i)];
    return dofs.to_weak_function(x, mesh);
}

Solution solve(const PolyMesh& mesh, const DofMap& dofs, const ConstrainedSystem& system,
               const SolverOptions& options)
{
    Solution sol;
    sol.num_free_dofs = static_cast<int>(system.rhs.size());
    sol.analytic_tangential_derivative = system.analytic_tangential_derivative;

    Eigen::VectorXd x(system.rhs.size());
    if (options.condense) {
        const CondensedSystem cond = condense(system, dofs);
        sol.num_condensed_dofs = cond.num_skeleton();
        const auto skel = solve_spd(cond.matrix, cond.rhs, options);
        x.head(system.num_interior) = cond.recover_interior(skel.x);
        x.tail(cond.num_skeleton()) = skel.x;
    } else {
        sol.num_condensed_dofs = sol.num_free_dofs;
        x = solve_spd(system.matrix, system.rhs, options).x;
    }
    sol.relative_residual = system.rhs.size() > 0 ? relative_residual(system.matrix, x, system.rhs) : 0.0;
    sol.u = expand_solution(mesh, dofs, system, x);
    return sol;
}

Solution solve_biharmonic(const PolyMesh& mesh, int k, const BiharmonicProblem& problem,
                          const SolverOptions& options)
{
    const auto degrees = QuadratureDegrees::for_degree(k);
    const auto assembled = assemble(mesh, k, problem, degrees);
    const auto constrained =
        apply_boundary_conditions(mesh, assembled.system, assembled.dofs, problem, degrees);
    return solve(mesh, assembled.dofs, constrained, options);
}

}  // namespace wgbh
