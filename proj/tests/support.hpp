#pragma once

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Core>

#include "wgbh/mesh.hpp"
#include "wgbh/problem.hpp"
#include "wgbh/solver.hpp"
#include "wgbh/weak_function.hpp"

namespace wgbh::test {

inline std::string fixture_path(const std::string& name)
{
    return std::string(WGBH_FIXTURE_DIR) + "/" + name;
}

/// Single irregular convex pentagon.
inline PolyMesh pentagon_mesh()
{
    return PolyMesh({{0.0, 0.0}, {1.0, 0.1}, {1.2, 0.7}, {0.5, 1.1}, {-0.1, 0.6}},
                    {{0, 1, 2, 3, 4}});
}

inline PolyMesh single_triangle()
{
    return PolyMesh({{0.1, 0.0}, {0.9, 0.2}, {0.3, 0.8}}, {{0, 1, 2}});
}

inline PolyMesh polygon6_mesh() { return load_mesh_file(fixture_path("polygon6.wgmesh")); }

inline BiharmonicProblem homogeneous_problem()
{
    BiharmonicProblem p;
    p.f = [](const Point&) { return 0.0; };
    p.xi = [](const Point&) { return 0.0; };
    p.nu = [](const Point&, const Point&) { return 0.0; };
    p.grad_xi_tau = [](const Point&, const Point&) { return 0.0; };
    return p;
}

inline Eigen::VectorXd random_vector(std::mt19937& rng, int n)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    return v;
}

/// Random weak function, optionally zero on boundary edges (V_h^0).
inline WeakFunction random_weak_function(std::mt19937& rng, const PolyMesh& mesh, int k,
                                         bool homogeneous)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    WeakFunction v = WeakFunction::zero(mesh, k);
    auto fill = [&](BlockMatrix& m) {
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    };
    fill(v.interior);
    fill(v.trace);
    fill(v.grad_x);
    fill(v.grad_y);
    if (homogeneous) {
        for (int e = 0; e < mesh.num_edges(); ++e) {
            if (!mesh.edge(e).is_boundary) continue;
            v.trace.row(e).setZero();
            v.grad_x.row(e).setZero();
            v.grad_y.row(e).setZero();
        }
    }
    return v;
}

inline double max_abs(const WeakFunction& v)
{
    return std::max({v.interior.cwiseAbs().maxCoeff(), v.trace.size() ? v.trace.cwiseAbs().maxCoeff() : 0.0,
                     v.grad_x.size() ? v.grad_x.cwiseAbs().maxCoeff() : 0.0,
                     v.grad_y.size() ? v.grad_y.cwiseAbs().maxCoeff() : 0.0});
}

}  // namespace wgbh::test
