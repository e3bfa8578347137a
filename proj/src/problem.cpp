#include "wgbh/problem.hpp"

namespace wgbh {

double tangential_derivative(const ScalarField& xi, const Point& x, const Point& direction,
                             double step)
{
    const Point d = step * direction;
    return (-xi(x + 2.0 * d) + 8.0 * xi(x + d) - 8.0 * xi(x - d) + xi(x - 2.0 * d)) / (12.0 * step);
}

}  // namespace wgbh
