#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "wgbh/problem.hpp"

namespace wgbh {

/// Closed-form exact solution with the derivatives the harness needs.
struct ManufacturedSolution {
    std::string name;
    std::string formula;
    ScalarField u;
    VectorField grad;
    std::function<Eigen::Matrix2d(const Point&)> hessian;
    ScalarField bilaplacian;

    /// f = bilaplacian, xi = u, nu = grad u . n, grad xi . tau analytic.
    BiharmonicProblem problem() const;
};

/// Built-in cases: quad, bubble, trig, biquad.
ManufacturedSolution manufactured_case(const std::string& name);
std::vector<std::string> manufactured_case_names();

}  // namespace wgbh
