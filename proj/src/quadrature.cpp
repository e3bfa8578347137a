#include "wgbh/quadrature.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

namespace wgbh {

namespace {

void check_degree(int degree)
{
    if (degree < 0 || degree > kMaxQuadratureDegree)
        throw QuadratureError("quadrature degree " + std::to_string(degree) +
                              " is outside the supported range [0, " +
                              std::to_string(kMaxQuadratureDegree) + "]");
}

struct GaussTable {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Newton iteration on P_n from the Chebyshev-like initial guess.
GaussTable compute_gauss(int n)
{
    GaussTable g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int m = 2; m <= n; ++m) {
                const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // map [-1, 1] -> [0, 1], ascending
        g.nodes[n - 1 - i] = 0.5 * (x + 1.0);
        g.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
}

const GaussTable& gauss_table(int n)
{
    static std::deque<GaussTable> cache;  // stable references on growth
    static std::mutex lock;
    std::lock_guard guard(lock);
    if (cache.size() <= static_cast<std::size_t>(n)) {
        for (int m = static_cast<int>(cache.size()); m <= n; ++m)
            cache.push_back(m == 0 ? GaussTable{} : compute_gauss(m));
    }
    return cache[n];
}

int points_for_degree(int degree) { return degree / 2 + 1; }

}  // namespace

double QuadratureRule::total_weight() const
{
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (n < 1) throw QuadratureError("Gauss-Legendre rule needs at least one point");
    const auto& g = gauss_table(n);
    nodes = g.nodes;
    weights = g.weights;
}

QuadratureRule triangle_rule(const Point& a, const Point& b, const Point& c, int degree)
{
    check_degree(degree);
    // Collapsed (Duffy) product rule; the Jacobian adds one degree in the
    // collapsed direction.
    const int n = points_for_degree(degree + 1);
    const auto& g = gauss_table(n);
    const double jac = std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());

    QuadratureRule rule;
    rule.exactness_degree = degree;
    rule.points.reserve(static_cast<std::size_t>(n) * n);
    rule.weights.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double s = g.nodes[i];
        for (int j = 0; j < n; ++j) {
            const double t = g.nodes[j];
            const double xi = s * (1.0 - t);
            const double eta = s * t;
            rule.points.push_back(a + xi * (b - a) + eta * (c - a));
            rule.weights.push_back(g.weights[i] * g.weights[j] * s * jac);
        }
    }
    return rule;
}

QuadratureRule element_rule(const PolyMesh& mesh, int element, int degree)
{
    const Element& el = mesh.element(element);
    const auto& ids = el.vertex_ids;
    if (ids.size() == 3)
        return triangle_rule(mesh.vertex(ids[0]), mesh.vertex(ids[1]), mesh.vertex(ids[2]), degree);

    QuadratureRule rule;
    rule.exactness_degree = degree;
    const std::size_t k = ids.size();
    for (std::size_t a = 0; a < k; ++a) {
        auto sub = triangle_rule(el.centroid, mesh.vertex(ids[a]), mesh.vertex(ids[(a + 1) % k]),
                                 degree);
        rule.points.insert(rule.points.end(), sub.points.begin(), sub.points.end());
        rule.weights.insert(rule.weights.end(), sub.weights.begin(), sub.weights.end());
    }
    return rule;
}

EdgeQuadratureRule segment_rule(const Point& a, const Point& b, int degree)
{
    check_degree(degree);
    const int n = points_for_degree(degree);
    const auto& g = gauss_table(n);
    const double len = (b - a).norm();
    EdgeQuadratureRule rule;
    rule.exactness_degree = degree;
    rule.params = g.nodes;
    rule.points.reserve(n);
    rule.weights.reserve(n);
    for (int i = 0; i < n; ++i) {
        rule.points.push_back(a + g.nodes[i] * (b - a));
        rule.weights.push_back(g.weights[i] * len);
    }
    return rule;
}

EdgeQuadratureRule edge_rule(const PolyMesh& mesh, int edge, int degree)
{
    const Edge& e = mesh.edge(edge);
    return segment_rule(mesh.vertex(e.endpoint_ids[0]), mesh.vertex(e.endpoint_ids[1]), degree);
}

}  // namespace wgbh
