#include "wgbh/cases.hpp"

#include <cmath>
#include <stdexcept>

namespace wgbh {

BiharmonicProblem ManufacturedSolution::problem() const
{
    BiharmonicProblem p;
    p.f = bilaplacian;
    p.xi = u;
    auto g = grad;
    p.nu = [g](const Point& x, const Point& n) { return g(x).dot(n); };
    p.grad_xi_tau = [g](const Point& x, const Point& tau) { return g(x).dot(tau); };
    return p;
}

namespace {

ManufacturedSolution quad_case()
{
    ManufacturedSolution s;
    s.name = "quad";
    s.formula = "x^2+y^2+xy+x+y+1";
    s.u = [](const Point& p) {
        const double x = p.x(), y = p.y();
        return x * x + y * y + x * y + x + y + 1.0;
    };
    s.grad = [](const Point& p) {
        return Eigen::Vector2d(2.0 * p.x() + p.y() + 1.0, 2.0 * p.y() + p.x() + 1.0);
    };
    s.hessian = [](const Point&) { return Eigen::Matrix2d{{2.0, 1.0}, {1.0, 2.0}}; };
    s.bilaplacian = [](const Point&) { return 0.0; };
    return s;
}

// u = X(x) X(y) with X(t) = t^2 (1 - t)^2
ManufacturedSolution bubble_case()
{
    struct Factor {
        static double v(double t) { return t * t * (1.0 - t) * (1.0 - t); }
        static double d1(double t) { return 2.0 * t - 6.0 * t * t + 4.0 * t * t * t; }
        static double d2(double t) { return 2.0 - 12.0 * t + 12.0 * t * t; }
    };
    ManufacturedSolution s;
    s.name = "bubble";
    s.formula = "x^2(1-x)^2y^2(1-y)^2";
    s.u = [](const Point& p) { return Factor::v(p.x()) * Factor::v(p.y()); };
    s.grad = [](const Point& p) {
        return Eigen::Vector2d(Factor::d1(p.x()) * Factor::v(p.y()),
                               Factor::v(p.x()) * Factor::d1(p.y()));
    };
    s.hessian = [](const Point& p) {
        const double xy = Factor::d1(p.x()) * Factor::d1(p.y());
        return Eigen::Matrix2d{{Factor::d2(p.x()) * Factor::v(p.y()), xy},
                               {xy, Factor::v(p.x()) * Factor::d2(p.y())}};
    };
    // X'''' = 24
    s.bilaplacian = [](const Point& p) {
        return 24.0 * Factor::v(p.y()) + 2.0 * Factor::d2(p.x()) * Factor::d2(p.y()) +
               24.0 * Factor::v(p.x());
    };
    return s;
}

ManufacturedSolution trig_case()
{
    ManufacturedSolution s;
    s.name = "trig";
    s.formula = "sin(x)sin(y)";
    s.u = [](const Point& p) { return std::sin(p.x()) * std::sin(p.y()); };
    s.grad = [](const Point& p) {
        return Eigen::Vector2d(std::cos(p.x()) * std::sin(p.y()), std::sin(p.x()) * std::cos(p.y()));
    };
    s.hessian = [](const Point& p) {
        const double u = std::sin(p.x()) * std::sin(p.y());
        const double c = std::cos(p.x()) * std::cos(p.y());
        return Eigen::Matrix2d{{-u, c}, {c, -u}};
    };
    s.bilaplacian = [](const Point& p) { return 4.0 * std::sin(p.x()) * std::sin(p.y()); };
    return s;
}

// u = P(x) P(y) with P(t) = t (1 - t)
ManufacturedSolution biquad_case()
{
    ManufacturedSolution s;
    s.name = "biquad";
    s.formula = "x(1-x)y(1-y)";
    auto p0 = [](double t) { return t * (1.0 - t); };
    auto p1 = [](double t) { return 1.0 - 2.0 * t; };
    s.u = [p0](const Point& p) { return p0(p.x()) * p0(p.y()); };
    s.grad = [p0, p1](const Point& p) {
        return Eigen::Vector2d(p1(p.x()) * p0(p.y()), p0(p.x()) * p1(p.y()));
    };
    s.hessian = [p0, p1](const Point& p) {
        const double xy = p1(p.x()) * p1(p.y());
        return Eigen::Matrix2d{{-2.0 * p0(p.y()), xy}, {xy, -2.0 * p0(p.x())}};
    };
    s.bilaplacian = [](const Point&) { return 8.0; };
    return s;
}

}  // namespace

ManufacturedSolution manufactured_case(const std::string& name)
{
    if (name == "quad") return quad_case();
    if (name == "bubble") return bubble_case();
    if (name == "trig") return trig_case();
    if (name == "biquad") return biquad_case();
    throw std::invalid_argument("unknown case '" + name + "' (expected quad, bubble, trig, biquad)");
}

std::vector<std::string> manufactured_case_names() { return {"quad", "bubble", "trig", "biquad"}; }

}  // namespace wgbh
