#include "wgbh/weak_function.hpp"

#include <stdexcept>

namespace wgbh {

namespace {

void check_compatible(const WeakFunction& a, const WeakFunction& b)
{
    if (a.k != b.k || a.interior.rows() != b.interior.rows() || a.trace.rows() != b.trace.rows())
        throw std::invalid_argument("weak functions live on different spaces");
}

}  // namespace

WeakFunction WeakFunction::zero(const PolyMesh& mesh, int k)
{
    if (k < 2) throw std::invalid_argument("weak function degree k must be >= 2");
    WeakFunction v;
    v.k = k;
    v.interior = BlockMatrix::Zero(mesh.num_elements(), poly_dim(k));
    v.trace = BlockMatrix::Zero(mesh.num_edges(), k - 1);
    v.grad_x = BlockMatrix::Zero(mesh.num_edges(), k - 1);
    v.grad_y = BlockMatrix::Zero(mesh.num_edges(), k - 1);
    return v;
}

bool WeakFunction::vanishes_on_boundary(const PolyMesh& mesh, double tol) const
{
    for (int e = 0; e < mesh.num_edges(); ++e) {
        if (!mesh.edge(e).is_boundary) continue;
        if (trace.row(e).cwiseAbs().maxCoeff() > tol) return false;
        if (grad_x.row(e).cwiseAbs().maxCoeff() > tol) return false;
        if (grad_y.row(e).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

WeakFunction& WeakFunction::operator+=(const WeakFunction& other)
{
    check_compatible(*this, other);
    interior += other.interior;
    trace += other.trace;
    grad_x += other.grad_x;
    grad_y += other.grad_y;
    return *this;
}

WeakFunction& WeakFunction::operator-=(const WeakFunction& other)
{
    check_compatible(*this, other);
    interior -= other.interior;
    trace -= other.trace;
    grad_x -= other.grad_x;
    grad_y -= other.grad_y;
    return *this;
}

WeakFunction& WeakFunction::operator*=(double alpha)
{
    interior *= alpha;
    trace *= alpha;
    grad_x *= alpha;
    grad_y *= alpha;
    return *this;
}

WeakFunction operator+(WeakFunction a, const WeakFunction& b) { return a += b; }
WeakFunction operator-(WeakFunction a, const WeakFunction& b) { return a -= b; }
WeakFunction operator*(double alpha, WeakFunction v) { return v *= alpha; }

}  // namespace wgbh
