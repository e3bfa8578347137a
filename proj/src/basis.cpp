#include "wgbh/basis.hpp"

#include <stdexcept>

namespace wgbh {

namespace {

// powers[n] = s^n for n <= degree, and falling-factorial derivative helpers.
void fill_powers(double s, int degree, std::vector<double>& powers)
{
    powers.assign(degree + 1, 1.0);
    for (int n = 1; n <= degree; ++n) powers[n] = powers[n - 1] * s;
}

// d^order/ds^order of s^n, as coefficient * s^(n - order).
double derivative_of_power(const std::vector<double>& powers, int n, int order)
{
    if (order > n) return 0.0;
    double c = 1.0;
    for (int q = 0; q < order; ++q) c *= static_cast<double>(n - q);
    return c * powers[n - order];
}

}  // namespace

ElementBasis::ElementBasis(int degree, Point center, double scale)
    : degree_(degree), center_(std::move(center)), scale_(scale)
{
    if (degree < 0) throw std::invalid_argument("basis degree must be non-negative");
    if (!(scale > 0.0)) throw std::invalid_argument("basis scale must be positive");
    exponents_.reserve(poly_dim(degree));
    for (int d = 0; d <= degree; ++d)
        for (int b = 0; b <= d; ++b) exponents_.emplace_back(d - b, b);
}

ElementBasis ElementBasis::for_element(const PolyMesh& mesh, int element, int degree)
{
    const Element& el = mesh.element(element);
    return ElementBasis(degree, el.centroid, el.diameter);
}

Eigen::VectorXd ElementBasis::values(const Point& p) const
{
    std::vector<double> px, py;
    fill_powers((p.x() - center_.x()) / scale_, degree_, px);
    fill_powers((p.y() - center_.y()) / scale_, degree_, py);
    Eigen::VectorXd v(size());
    for (int m = 0; m < size(); ++m) v[m] = px[exponents_[m].first] * py[exponents_[m].second];
    return v;
}

Eigen::VectorXd ElementBasis::first_derivative(const Point& p, int i) const
{
    std::vector<double> px, py;
    fill_powers((p.x() - center_.x()) / scale_, degree_, px);
    fill_powers((p.y() - center_.y()) / scale_, degree_, py);
    const int ox = i == 0 ? 1 : 0;
    const int oy = 1 - ox;
    Eigen::VectorXd v(size());
    for (int m = 0; m < size(); ++m) {
        const auto [a, b] = exponents_[m];
        v[m] = derivative_of_power(px, a, ox) * derivative_of_power(py, b, oy) / scale_;
    }
    return v;
}

Eigen::VectorXd ElementBasis::second_derivative(const Point& p, int i, int j) const
{
    std::vector<double> px, py;
    fill_powers((p.x() - center_.x()) / scale_, degree_, px);
    fill_powers((p.y() - center_.y()) / scale_, degree_, py);
    const int ox = (i == 0) + (j == 0);
    const int oy = 2 - ox;
    const double s2 = scale_ * scale_;
    Eigen::VectorXd v(size());
    for (int m = 0; m < size(); ++m) {
        const auto [a, b] = exponents_[m];
        v[m] = derivative_of_power(px, a, ox) * derivative_of_power(py, b, oy) / s2;
    }
    return v;
}

Eigen::VectorXd EdgeBasis::values(double t) const
{
    Eigen::VectorXd v(size());
    if (degree_ < 0) return v;
    const double s = 2.0 * t - 1.0;
    v[0] = 1.0;
    if (degree_ >= 1) v[1] = s;
    for (int m = 2; m <= degree_; ++m)
        v[m] = ((2.0 * m - 1.0) * s * v[m - 1] - (m - 1.0) * v[m - 2]) / m;
    return v;
}

Eigen::VectorXd EdgeBasis::mass_diagonal(double length) const
{
    Eigen::VectorXd d(size());
    for (int m = 0; m <= degree_; ++m) d[m] = length / (2.0 * m + 1.0);
    return d;
}

}  // namespace wgbh
