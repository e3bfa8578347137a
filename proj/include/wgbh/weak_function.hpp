#pragma once

#include <functional>

#include <Eigen/Core>

#include "wgbh/basis.hpp"
#include "wgbh/mesh.hpp"

namespace wgbh {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Eigen::Vector2d(const Point&)>;

using BlockMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Coefficients of a weak function {v_0, v_b, v_g} of degree k on a mesh:
/// v_0 in P_k(T) per element (scaled monomials), v_b and both components of
/// v_g in P_{k-2}(e) per edge (Legendre in the edge's global orientation).
/// Edge blocks are stored once per edge, so the function is single valued
/// on interior edges.
struct WeakFunction {
    int k = 2;
    BlockMatrix interior;  // num_elements x poly_dim(k)
    BlockMatrix trace;     // num_edges x (k - 1)
    BlockMatrix grad_x;    // num_edges x (k - 1)
    BlockMatrix grad_y;    // num_edges x (k - 1)

    static WeakFunction zero(const PolyMesh& mesh, int k);

    int edge_block_size() const { return k - 1; }

    /// v_g component c (0 = x, 1 = y).
    BlockMatrix& grad(int c) { return c == 0 ? grad_x : grad_y; }
    const BlockMatrix& grad(int c) const { return c == 0 ? grad_x : grad_y; }

    /// True when v_b and v_g vanish on every boundary edge (membership in V_h^0).
    bool vanishes_on_boundary(const PolyMesh& mesh, double tol = 0.0) const;

    WeakFunction& operator+=(const WeakFunction& other);
    WeakFunction& operator-=(const WeakFunction& other);
    WeakFunction& operator*=(double alpha);
};

WeakFunction operator+(WeakFunction a, const WeakFunction& b);
WeakFunction operator-(WeakFunction a, const WeakFunction& b);
WeakFunction operator*(double alpha, WeakFunction v);

}  // namespace wgbh
