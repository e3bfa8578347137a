#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace wgbh {

using Point = Eigen::Vector2d;

class MeshError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed mesh text (bad header, bad token, index out of range).
class MeshParseError : public MeshError {
public:
    using MeshError::MeshError;
};

/// Structurally invalid mesh (orientation, zero area, non-manifold edge).
class MeshTopologyError : public MeshError {
public:
    using MeshError::MeshError;
};

struct Element {
    std::vector<int> vertex_ids;  // counterclockwise
    std::vector<int> edge_ids;    // edge_ids[i] joins vertex_ids[i] -> vertex_ids[i+1]
    Point centroid = Point::Zero();
    double diameter = 0.0;
    double area = 0.0;
};

/// A straight edge. Its global orientation runs from the lower to the higher
/// vertex id; edge polynomials are parameterized along that direction.
struct Edge {
    std::array<int, 2> endpoint_ids{-1, -1};  // endpoint_ids[0] < endpoint_ids[1]
    double length = 0.0;
    std::array<int, 2> neighbors{-1, -1};  // neighbors[1] == -1 on the boundary
    std::array<Point, 2> normals{Point::Zero(), Point::Zero()};  // outward for each neighbor
    Point unit_tangent = Point::Zero();  // normals[0] rotated by +90 degrees
    bool is_boundary = false;

    int neighbor_count() const { return neighbors[1] < 0 ? 1 : 2; }

    /// Outward unit normal of `element` on this edge.
    const Point& outward_normal(int element) const;
};

/// Immutable planar polygonal mesh. Shape regularity is assumed of the input
/// and never checked.
class PolyMesh {
public:
    PolyMesh() = default;

    /// Builds the mesh from vertex coordinates and counterclockwise polygons,
    /// deriving edges, normals and element geometry. Throws MeshTopologyError.
    PolyMesh(std::vector<Point> vertices, std::vector<std::vector<int>> polygons);

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Element>& elements() const { return elements_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const Point& vertex(int id) const { return vertices_[id]; }
    const Element& element(int id) const { return elements_[id]; }
    const Edge& edge(int id) const { return edges_[id]; }

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_elements() const { return static_cast<int>(elements_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_boundary_edges() const;

    double h_max() const { return h_max_; }

    /// Nominal mesh size used in reports; 1/n for the uniform generators,
    /// h_max otherwise.
    double mesh_size() const { return mesh_size_ > 0.0 ? mesh_size_ : h_max_; }
    void set_mesh_size(double h) { mesh_size_ = h; }

    /// Point on edge `e` at parameter t in [0, 1] along its global orientation.
    Point edge_point(int e, double t) const;

private:
    std::vector<Point> vertices_;
    std::vector<Element> elements_;
    std::vector<Edge> edges_;
    double h_max_ = 0.0;
    double mesh_size_ = 0.0;
};

/// n x n axis-aligned squares on (0,1)^2.
PolyMesh uniform_rectangles(int n);

/// n x n squares on (0,1)^2, each cut by its negative-slope diagonal.
PolyMesh uniform_triangles(int n);

/// Reads the `wgmesh 1` text format:
///   wgmesh 1
///   v x y
///   p k i1 ... ik
/// with 0-based counterclockwise vertex indices and `#` comments.
PolyMesh load_mesh(std::istream& in);
PolyMesh load_mesh_file(const std::string& path);

void write_mesh(std::ostream& out, const PolyMesh& mesh);

}  // namespace wgbh
