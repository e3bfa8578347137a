#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "wgbh/mesh.hpp"

namespace wgbh {

/// Dimension of P_r in two variables.
constexpr int poly_dim(int r) { return r < 0 ? 0 : (r + 1) * (r + 2) / 2; }

/// Scaled monomials ((x - xc)/h)^a ((y - yc)/h)^b, a + b <= degree, ordered by
/// total degree and then by increasing b.
class ElementBasis {
public:
    ElementBasis() = default;
    ElementBasis(int degree, Point center, double scale);

    /// Basis attached to an element's centroid and diameter.
    static ElementBasis for_element(const PolyMesh& mesh, int element, int degree);

    int degree() const { return degree_; }
    int size() const { return static_cast<int>(exponents_.size()); }
    const Point& center() const { return center_; }
    double scale() const { return scale_; }
    const std::pair<int, int>& exponent(int m) const { return exponents_[m]; }

    Eigen::VectorXd values(const Point& p) const;
    /// d/dx_i of every basis function (i = 0 for x, 1 for y).
    Eigen::VectorXd first_derivative(const Point& p, int i) const;
    /// d^2/(dx_i dx_j) of every basis function.
    Eigen::VectorXd second_derivative(const Point& p, int i, int j) const;

    double evaluate(const Eigen::Ref<const Eigen::VectorXd>& coeffs, const Point& p) const
    {
        return values(p).dot(coeffs);
    }

private:
    int degree_ = -1;
    Point center_ = Point::Zero();
    double scale_ = 1.0;
    std::vector<std::pair<int, int>> exponents_;
};

/// Legendre polynomials P_m(2t - 1), m <= degree, in the edge parameter
/// t in [0, 1]. Orthogonal on the edge with ||P_m||^2 = length / (2m + 1).
class EdgeBasis {
public:
    EdgeBasis() = default;
    explicit EdgeBasis(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    int size() const { return degree_ + 1; }

    Eigen::VectorXd values(double t) const;
    /// Diagonal of the edge Gram matrix.
    Eigen::VectorXd mass_diagonal(double length) const;

    double evaluate(const Eigen::Ref<const Eigen::VectorXd>& coeffs, double t) const
    {
        return values(t).dot(coeffs);
    }

private:
    int degree_ = -1;
};

}  // namespace wgbh
