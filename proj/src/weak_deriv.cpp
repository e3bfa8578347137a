#include "wgbh/weak_deriv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wgbh {

LocalElement::LocalElement(const PolyMesh& mesh, int element, int k)
    : LocalElement(mesh, element, k, QuadratureDegrees::for_degree(k))
{
}

LocalElement::LocalElement(const PolyMesh& mesh, int element, int k, QuadratureDegrees degrees)
    : element_(element), k_(k)
{
    if (k < 2) throw std::invalid_argument("weak Galerkin degree k must be >= 2");
    const Element& el = mesh.element(element);
    diameter_ = el.diameter;
    size_ = std::sqrt(2.0 * el.area);
    basis_k_ = ElementBasis(k, el.centroid, el.diameter);
    basis_r_ = ElementBasis(k - 2, el.centroid, el.diameter);
    edge_basis_ = EdgeBasis(k - 2);
    rule_ = element_rule(mesh, element, degrees.element);

    const int ne = static_cast<int>(el.edge_ids.size());
    edge_ids_ = el.edge_ids;
    normals_.reserve(ne);
    lengths_.reserve(ne);
    edge_rules_.reserve(ne);
    for (int id : edge_ids_) {
        const Edge& e = mesh.edge(id);
        normals_.push_back(e.outward_normal(element));
        lengths_.push_back(e.length);
        edge_rules_.push_back(wgbh::edge_rule(mesh, id, degrees.edge));
    }

    const int nr = basis_r_.size();
    gram_r_ = Eigen::MatrixXd::Zero(nr, nr);
    for (std::size_t q = 0; q < rule_.size(); ++q) {
        const Eigen::VectorXd phi = basis_r_.values(rule_.points[q]);
        gram_r_.noalias() += rule_.weights[q] * phi * phi.transpose();
    }
    gram_r_llt_.compute(gram_r_);
    if (gram_r_llt_.info() != Eigen::Success)
        throw WeakDerivError("singular P_{k-2} Gram matrix on element " + std::to_string(element));

    const int nk = basis_k_.size();
    const int nb = edge_basis_.size();
    trace_proj_.resize(ne);
    grad_proj_.resize(ne);
    for (int a = 0; a < ne; ++a) {
        const auto& er = edge_rules_[a];
        Eigen::MatrixXd pt = Eigen::MatrixXd::Zero(nb, nk);
        Eigen::MatrixXd px = Eigen::MatrixXd::Zero(nb, nk);
        Eigen::MatrixXd py = Eigen::MatrixXd::Zero(nb, nk);
        for (std::size_t q = 0; q < er.size(); ++q) {
            const Eigen::VectorXd mu = er.weights[q] * edge_basis_.values(er.params[q]);
            pt.noalias() += mu * basis_k_.values(er.points[q]).transpose();
            px.noalias() += mu * basis_k_.first_derivative(er.points[q], 0).transpose();
            py.noalias() += mu * basis_k_.first_derivative(er.points[q], 1).transpose();
        }
        const Eigen::VectorXd inv_mass = edge_mass(a).cwiseInverse();
        trace_proj_[a] = inv_mass.asDiagonal() * pt;
        grad_proj_[a][0] = inv_mass.asDiagonal() * px;
        grad_proj_[a][1] = inv_mass.asDiagonal() * py;
    }
}

Eigen::VectorXd LocalElement::gather(const WeakFunction& v) const
{
    if (v.k != k_) throw std::invalid_argument("weak function degree does not match element");
    Eigen::VectorXd x(num_local_dofs());
    x.head(interior_size()) = v.interior.row(element_).transpose();
    const int m = edge_block_size();
    for (int a = 0; a < num_edges(); ++a) {
        const int e = edge_ids_[a];
        x.segment(trace_offset(a), m) = v.trace.row(e).transpose();
        x.segment(grad_offset(a, 0), m) = v.grad_x.row(e).transpose();
        x.segment(grad_offset(a, 1), m) = v.grad_y.row(e).transpose();
    }
    return x;
}

LocalWeakDerivOp build_weak_deriv(const LocalElement& local, int i, int j)
{
    if (i < 0 || i > 1 || j < 0 || j > 1)
        throw std::invalid_argument("weak derivative indices must be 0 or 1");

    const auto& test = local.test_basis();
    const auto& trial = local.interior_basis();
    const auto& eb = local.edge_basis();
    const int m = local.edge_block_size();
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(test.size(), local.num_local_dofs());

    const auto& rule = local.rule();
    for (std::size_t q = 0; q < rule.size(); ++q) {
        rhs.leftCols(trial.size()).noalias() += rule.weights[q] *
                                                test.second_derivative(rule.points[q], j, i) *
                                                trial.values(rule.points[q]).transpose();
    }

    for (int a = 0; a < local.num_edges(); ++a) {
        const Point& n = local.normal(a);
        const auto& er = local.edge_rule(a);
        for (std::size_t q = 0; q < er.size(); ++q) {
            const Eigen::VectorXd mu = eb.values(er.params[q]);
            const double w = er.weights[q];
            rhs.middleCols(local.trace_offset(a), m).noalias() -=
                (w * n[i]) * test.first_derivative(er.points[q], j) * mu.transpose();
            rhs.middleCols(local.grad_offset(a, i), m).noalias() +=
                (w * n[j]) * test.values(er.points[q]) * mu.transpose();
        }
    }

    return {local.element(), i, j, local.test_gram_factor().solve(rhs)};
}

std::array<LocalWeakDerivOp, 4> build_weak_derivs(const LocalElement& local)
{
    return {build_weak_deriv(local, 0, 0), build_weak_deriv(local, 0, 1),
            build_weak_deriv(local, 1, 0), build_weak_deriv(local, 1, 1)};
}

Eigen::VectorXd apply_weak_deriv(const LocalWeakDerivOp& op, const Eigen::VectorXd& v)
{
    if (v.size() != op.matrix.cols())
        throw std::invalid_argument("local DOF vector has length " + std::to_string(v.size()) +
                                    ", operator expects " + std::to_string(op.matrix.cols()));
    return op.matrix * v;
}

namespace {

// Right-hand side of the identity, integrated point by point. With
// `project_traces` the edge values of v_0 and d_i v_0 are replaced by Q_b.
Eigen::VectorXd identity_rhs(const LocalElement& local, const Eigen::VectorXd& v, int i, int j,
                             bool project_traces)
{
    const auto& test = local.test_basis();
    const auto& trial = local.interior_basis();
    const auto& eb = local.edge_basis();
    const int m = local.edge_block_size();
    const Eigen::VectorXd v0 = v.head(local.interior_size());

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(test.size());
    const auto& rule = local.rule();
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double d2 = trial.second_derivative(rule.points[q], i, j).dot(v0);
        rhs += (rule.weights[q] * d2) * test.values(rule.points[q]);
    }

    for (int a = 0; a < local.num_edges(); ++a) {
        const Point& n = local.normal(a);
        const auto& er = local.edge_rule(a);
        const Eigen::VectorXd vb = v.segment(local.trace_offset(a), m);
        const Eigen::VectorXd vgi = v.segment(local.grad_offset(a, i), m);
        const Eigen::VectorXd qb_v0 = local.trace_projection(a) * v0;
        const Eigen::VectorXd qb_div0 = local.gradient_projection(a, i) * v0;
        for (std::size_t q = 0; q < er.size(); ++q) {
            const Point& x = er.points[q];
            const Eigen::VectorXd mu = eb.values(er.params[q]);
            const double trace_v0 = project_traces ? mu.dot(qb_v0) : trial.values(x).dot(v0);
            const double trace_di =
                project_traces ? mu.dot(qb_div0) : trial.first_derivative(x, i).dot(v0);
            const double jump = trace_v0 - mu.dot(vb);
            const double gjump = trace_di - mu.dot(vgi);
            rhs += (er.weights[q] * jump * n[i]) * test.first_derivative(x, j);
            rhs -= (er.weights[q] * gjump * n[j]) * test.values(x);
        }
    }
    return rhs;
}

double identity_residual(const LocalElement& local, const Eigen::VectorXd& v, int i, int j,
                         bool project_traces)
{
    if (v.size() != local.num_local_dofs())
        throw std::invalid_argument("local DOF vector has the wrong length");
    const auto op = build_weak_deriv(local, i, j);
    const Eigen::VectorXd lhs = local.test_gram() * (op.matrix * v);
    const Eigen::VectorXd rhs = identity_rhs(local, v, i, j, project_traces);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace

double check_parts_identity(const LocalElement& local, const Eigen::VectorXd& v, int i, int j)
{
    return identity_residual(local, v, i, j, false);
}

double check_projected_parts_identity(const LocalElement& local, const Eigen::VectorXd& v, int i, int j)
{
    return identity_residual(local, v, i, j, true);
}

Eigen::MatrixXd local_stabilizer(const LocalElement& local)
{
    const int n = local.num_local_dofs();
    const int nk = local.interior_size();
    const int m = local.edge_block_size();
    const double h = local.size();
    const double w_grad = 1.0 / h;
    const double w_trace = 1.0 / (h * h * h);

    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd d(m, n);
    for (int a = 0; a < local.num_edges(); ++a) {
        const Eigen::VectorXd mass = local.edge_mass(a);

        d.setZero();
        d.leftCols(nk) = local.trace_projection(a);
        d.middleCols(local.trace_offset(a), m).diagonal().setConstant(-1.0);
        s.noalias() += w_trace * d.transpose() * mass.asDiagonal() * d;

        for (int c = 0; c < 2; ++c) {
            d.setZero();
            d.leftCols(nk) = local.gradient_projection(a, c);
            d.middleCols(local.grad_offset(a, c), m).diagonal().setConstant(-1.0);
            s.noalias() += w_grad * d.transpose() * mass.asDiagonal() * d;
        }
    }
    return s;
}

Eigen::MatrixXd local_stiffness(const LocalElement& local)
{
    Eigen::MatrixXd k = local_stabilizer(local);
    const auto& gram = local.test_gram();
    for (const auto& op : build_weak_derivs(local))
        k.noalias() += op.matrix.transpose() * gram * op.matrix;
    return 0.5 * (k + k.transpose());
}

}  // namespace wgbh
