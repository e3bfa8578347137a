#include "wgbh/error_norms.hpp"

#include <algorithm>
#include <cmath>

#include "wgbh/weak_deriv.hpp"

namespace wgbh {

double triple_bar_norm(const PolyMesh& mesh, const WeakFunction& v)
{
    return triple_bar_norm(mesh, v, QuadratureDegrees::for_degree(v.k));
}

double triple_bar_norm(const PolyMesh& mesh, const WeakFunction& v, QuadratureDegrees degrees)
{
    double total = 0.0;
    for (int t = 0; t < mesh.num_elements(); ++t) {
        const LocalElement local(mesh, t, v.k, degrees);
        const Eigen::VectorXd x = local.gather(v);
        const Eigen::VectorXd v0 = x.head(local.interior_size());
        const int m = local.edge_block_size();

        double hessian_part = 0.0;
        for (const auto& op : build_weak_derivs(local)) {
            const Eigen::VectorXd d = apply_weak_deriv(op, x);
            const auto& rule = local.rule();
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const double val = local.test_basis().values(rule.points[q]).dot(d);
                hessian_part += rule.weights[q] * val * val;
            }
        }

        double grad_part = 0.0;
        double trace_part = 0.0;
        for (int a = 0; a < local.num_edges(); ++a) {
            const auto& er = local.edge_rule(a);
            const Eigen::VectorXd qb_v0 = local.trace_projection(a) * v0;
            const Eigen::VectorXd qb_gx = local.gradient_projection(a, 0) * v0;
            const Eigen::VectorXd qb_gy = local.gradient_projection(a, 1) * v0;
            const Eigen::VectorXd vb = x.segment(local.trace_offset(a), m);
            const Eigen::VectorXd gx = x.segment(local.grad_offset(a, 0), m);
            const Eigen::VectorXd gy = x.segment(local.grad_offset(a, 1), m);
            for (std::size_t q = 0; q < er.size(); ++q) {
                const Eigen::VectorXd mu = local.edge_basis().values(er.params[q]);
                const double db = mu.dot(qb_v0 - vb);
                const double dx = mu.dot(qb_gx - gx);
                const double dy = mu.dot(qb_gy - gy);
                trace_part += er.weights[q] * db * db;
                grad_part += er.weights[q] * (dx * dx + dy * dy);
            }
        }
        const double h = local.size();
        total += hessian_part + grad_part / h + trace_part / (h * h * h);
    }
    return std::sqrt(std::max(total, 0.0));
}

double l2_norm(const PolyMesh& mesh, const WeakFunction& v)
{
    return l2_norm(mesh, v, QuadratureDegrees::for_degree(v.k));
}

double l2_norm(const PolyMesh& mesh, const WeakFunction& v, QuadratureDegrees degrees)
{
    double total = 0.0;
    for (int t = 0; t < mesh.num_elements(); ++t) {
        const auto basis = ElementBasis::for_element(mesh, t, v.k);
        const auto rule = element_rule(mesh, t, degrees.element);
        const Eigen::VectorXd c = v.interior.row(t).transpose();
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double val = basis.values(rule.points[q]).dot(c);
            total += rule.weights[q] * val * val;
        }
    }
    return std::sqrt(total);
}

namespace {

std::vector<double> sample_params(int k)
{
    std::vector<double> nodes, weights;
    gauss_legendre_unit(QuadratureDegrees::for_degree(k).edge / 2 + 1, nodes, weights);
    nodes.push_back(0.0);
    nodes.push_back(1.0);
    return nodes;
}

}  // namespace

double ub_linf(const PolyMesh& mesh, const WeakFunction& v)
{
    const EdgeBasis basis(v.k - 2);
    const auto params = sample_params(v.k);
    double out = 0.0;
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Eigen::VectorXd c = v.trace.row(e).transpose();
        for (double t : params) out = std::max(out, std::abs(basis.values(t).dot(c)));
    }
    return out;
}

double ug_linf(const PolyMesh& mesh, const WeakFunction& v)
{
    const EdgeBasis basis(v.k - 2);
    const auto params = sample_params(v.k);
    double out = 0.0;
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Eigen::VectorXd cx = v.grad_x.row(e).transpose();
        const Eigen::VectorXd cy = v.grad_y.row(e).transpose();
        for (double t : params) {
            const Eigen::VectorXd mu = basis.values(t);
            out = std::max({out, std::abs(mu.dot(cx)), std::abs(mu.dot(cy))});
        }
    }
    return out;
}

ErrorQuadruple compute_errors(const PolyMesh& mesh, const WeakFunction& uh, const WeakFunction& qhu)
{
    const WeakFunction e = uh - qhu;
    ErrorQuadruple out;
    out.l2 = l2_norm(mesh, e);
    out.h2 = triple_bar_norm(mesh, e);
    out.ub_inf = ub_linf(mesh, e);
    out.ug_inf = ug_linf(mesh, e);
    out.h = mesh.mesh_size();
    return out;
}

std::optional<double> observed_order(double coarse, double fine)
{
    if (!(coarse > 0.0) || !(fine > 0.0) || !std::isfinite(coarse) || !std::isfinite(fine))
        return std::nullopt;
    return std::log2(coarse / fine);
}

std::vector<OrderRow> observed_order(const std::vector<ErrorQuadruple>& errors)
{
    std::vector<OrderRow> rows(errors.size());
    for (std::size_t r = 1; r < errors.size(); ++r) {
        const auto& c = errors[r - 1];
        const auto& f = errors[r];
        // log2 for halved h; general refinement ratios are rescaled
        double scale = 1.0;
        if (c.h > 0.0 && f.h > 0.0 && c.h != f.h) scale = 1.0 / std::log2(c.h / f.h);
        auto order = [scale](double a, double b) -> std::optional<double> {
            auto o = observed_order(a, b);
            if (o) *o *= scale;
            return o;
        };
        rows[r] = {order(c.l2, f.l2), order(c.h2, f.h2), order(c.ub_inf, f.ub_inf),
                   order(c.ug_inf, f.ug_inf)};
    }
    return rows;
}

}  // namespace wgbh
