#pragma once

#include <stdexcept>
#include <vector>

#include "wgbh/mesh.hpp"

namespace wgbh {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Highest polynomial degree the rule tables support.
inline constexpr int kMaxQuadratureDegree = 40;

/// Polynomial exactness used for element and edge integrals of a degree-k
/// weak Galerkin discretization.
struct QuadratureDegrees {
    int element = 6;
    int edge = 4;

    /// Element rules exact to max(2k, k + 4), edge rules to 2k.
    static QuadratureDegrees for_degree(int k) { return {k + 4 > 2 * k ? k + 4 : 2 * k, 2 * k}; }
};

struct QuadratureRule {
    std::vector<Point> points;
    std::vector<double> weights;
    int exactness_degree = 0;

    std::size_t size() const { return weights.size(); }
    double total_weight() const;
};

/// Rule on a segment. `params` are positions in [0, 1] along the segment.
struct EdgeQuadratureRule {
    std::vector<double> params;
    std::vector<Point> points;
    std::vector<double> weights;
    int exactness_degree = 0;

    std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre nodes and weights on [0, 1] with `n` points.
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Rule on the triangle (a, b, c), exact for total degree <= degree.
QuadratureRule triangle_rule(const Point& a, const Point& b, const Point& c, int degree);

/// Rule on a polygon element, exact for total degree <= degree. Triangles are
/// integrated directly, other polygons by a fan from the centroid.
QuadratureRule element_rule(const PolyMesh& mesh, int element, int degree);

/// Gauss-Legendre rule on an edge, exact for degree <= degree in arclength.
EdgeQuadratureRule edge_rule(const PolyMesh& mesh, int edge, int degree);

/// Gauss-Legendre rule on the segment a -> b.
EdgeQuadratureRule segment_rule(const Point& a, const Point& b, int degree);

}  // namespace wgbh
