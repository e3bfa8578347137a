#include "wgbh/projection.hpp"

#include <Eigen/Cholesky>
#include <string>

namespace wgbh {

Eigen::VectorXd l2_project(const ElementBasis& basis, const QuadratureRule& rule,
                           const ScalarField& f)
{
    const int n = basis.size();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd moments = Eigen::VectorXd::Zero(n);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Eigen::VectorXd phi = basis.values(rule.points[q]);
        gram.noalias() += rule.weights[q] * phi * phi.transpose();
        moments += (rule.weights[q] * f(rule.points[q])) * phi;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) throw ProjectionError("singular element Gram matrix");
    return llt.solve(moments);
}

Eigen::VectorXd project_Q0(const PolyMesh& mesh, int element, const ScalarField& f, int k,
                           int quad_degree)
{
    if (quad_degree < 0) quad_degree = QuadratureDegrees::for_degree(k).element;
    try {
        return l2_project(ElementBasis::for_element(mesh, element, k),
                          element_rule(mesh, element, quad_degree), f);
    } catch (const ProjectionError& err) {
        throw ProjectionError(std::string(err.what()) + " on element " + std::to_string(element));
    }
}

Eigen::VectorXd project_calQh(const PolyMesh& mesh, int element, const ScalarField& g, int k,
                              int quad_degree)
{
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (quad_degree < 0) quad_degree = QuadratureDegrees::for_degree(k).element;
    try {
        return l2_project(ElementBasis::for_element(mesh, element, k - 2),
                          element_rule(mesh, element, quad_degree), g);
    } catch (const ProjectionError& err) {
        throw ProjectionError(std::string(err.what()) + " on element " + std::to_string(element));
    }
}

Eigen::VectorXd project_Qb(const PolyMesh& mesh, int edge, const ScalarField& g, int degree,
                           int quad_degree)
{
    if (quad_degree < 0) quad_degree = 2 * (degree + 2);
    const EdgeBasis basis(degree);
    const auto rule = edge_rule(mesh, edge, quad_degree);
    Eigen::VectorXd moments = Eigen::VectorXd::Zero(basis.size());
    for (std::size_t q = 0; q < rule.size(); ++q)
        moments += (rule.weights[q] * g(rule.points[q])) * basis.values(rule.params[q]);
    return moments.cwiseQuotient(basis.mass_diagonal(mesh.edge(edge).length));
}

Eigen::MatrixX2d project_Qb_vector(const PolyMesh& mesh, int edge, const VectorField& g, int degree,
                                   int quad_degree)
{
    if (quad_degree < 0) quad_degree = 2 * (degree + 2);
    const EdgeBasis basis(degree);
    const auto rule = edge_rule(mesh, edge, quad_degree);
    Eigen::MatrixX2d moments = Eigen::MatrixX2d::Zero(basis.size(), 2);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Eigen::Vector2d val = g(rule.points[q]);
        moments += rule.weights[q] * basis.values(rule.params[q]) * val.transpose();
    }
    const Eigen::VectorXd mass = basis.mass_diagonal(mesh.edge(edge).length);
    moments.col(0).array() /= mass.array();
    moments.col(1).array() /= mass.array();
    return moments;
}

WeakFunction project_Qh(const PolyMesh& mesh, int k, const ScalarField& u, const VectorField& grad_u,
                        QuadratureDegrees degrees)
{
    WeakFunction v = WeakFunction::zero(mesh, k);
    for (int t = 0; t < mesh.num_elements(); ++t)
        v.interior.row(t) = project_Q0(mesh, t, u, k, degrees.element).transpose();
    for (int e = 0; e < mesh.num_edges(); ++e) {
        v.trace.row(e) = project_Qb(mesh, e, u, k - 2, degrees.edge).transpose();
        const Eigen::MatrixX2d g = project_Qb_vector(mesh, e, grad_u, k - 2, degrees.edge);
        v.grad_x.row(e) = g.col(0).transpose();
        v.grad_y.row(e) = g.col(1).transpose();
    }
    return v;
}

WeakFunction project_Qh(const PolyMesh& mesh, int k, const ScalarField& u, const VectorField& grad_u)
{
    return project_Qh(mesh, k, u, grad_u, QuadratureDegrees::for_degree(k));
}

}  // namespace wgbh
