#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "support.hpp"
#include "wgbh/mesh.hpp"

using namespace wgbh;

namespace {

int count_interior_edges(const PolyMesh& mesh)
{
    int n = 0;
    for (const auto& e : mesh.edges()) n += e.is_boundary ? 0 : 1;
    return n;
}

double total_area(const PolyMesh& mesh)
{
    double a = 0.0;
    for (const auto& el : mesh.elements()) a += el.area;
    return a;
}

// Invariants every valid mesh must satisfy.
void expect_consistent(const PolyMesh& mesh)
{
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Edge& edge = mesh.edge(e);
        EXPECT_LT(edge.endpoint_ids[0], edge.endpoint_ids[1]);
        EXPECT_NEAR(edge.normals[0].norm(), 1.0, 1e-14);
        EXPECT_NEAR(edge.unit_tangent.norm(), 1.0, 1e-14);
        EXPECT_NEAR(edge.unit_tangent.dot(edge.normals[0]), 0.0, 1e-14);
        // tangent is the normal rotated counterclockwise
        EXPECT_NEAR(edge.unit_tangent.x(), -edge.normals[0].y(), 1e-14);
        EXPECT_NEAR(edge.unit_tangent.y(), edge.normals[0].x(), 1e-14);
        EXPECT_EQ(edge.is_boundary, edge.neighbor_count() == 1);
        if (!edge.is_boundary) {
            EXPECT_NEAR((edge.normals[0] + edge.normals[1]).norm(), 0.0, 1e-14);
        }

        // normal points away from the neighbor's centroid
        for (int s = 0; s < edge.neighbor_count(); ++s) {
            const Element& el = mesh.element(edge.neighbors[s]);
            const Point mid = mesh.edge_point(e, 0.5);
            EXPECT_GT((mid - el.centroid).dot(edge.outward_normal(edge.neighbors[s])), 0.0);
        }
    }

    for (int t = 0; t < mesh.num_elements(); ++t) {
        const Element& el = mesh.element(t);
        EXPECT_GT(el.area, 0.0);
        EXPECT_GT(el.diameter, 0.0);
        const int k = static_cast<int>(el.vertex_ids.size());
        ASSERT_EQ(static_cast<int>(el.edge_ids.size()), k);
        double diam = 0.0;
        for (int a = 0; a < k; ++a) {
            for (int b = a + 1; b < k; ++b)
                diam = std::max(diam, (mesh.vertex(el.vertex_ids[a]) - mesh.vertex(el.vertex_ids[b])).norm());
            const Edge& edge = mesh.edge(el.edge_ids[a]);
            const std::set<int> ends{edge.endpoint_ids[0], edge.endpoint_ids[1]};
            EXPECT_EQ(ends, (std::set<int>{el.vertex_ids[a], el.vertex_ids[(a + 1) % k]}));
        }
        EXPECT_DOUBLE_EQ(el.diameter, diam);
    }

    // boundary edges close up: every vertex on the boundary touches exactly two boundary edges
    std::map<int, int> degree;
    for (const auto& edge : mesh.edges())
        if (edge.is_boundary) {
            ++degree[edge.endpoint_ids[0]];
            ++degree[edge.endpoint_ids[1]];
        }
    for (const auto& [v, d] : degree) EXPECT_EQ(d, 2) << "vertex " << v;
}

}  // namespace

TEST(UniformRectangles, SingleCell)
{
    const PolyMesh mesh = uniform_rectangles(1);
    EXPECT_EQ(mesh.num_elements(), 1);
    EXPECT_EQ(mesh.num_edges(), 4);
    EXPECT_EQ(mesh.num_vertices(), 4);
    EXPECT_EQ(mesh.num_boundary_edges(), 4);
    EXPECT_DOUBLE_EQ(mesh.mesh_size(), 1.0);
    expect_consistent(mesh);
}

TEST(UniformRectangles, CountsMatchEnumeration)
{
    for (int n : {2, 3, 4, 7}) {
        const PolyMesh mesh = uniform_rectangles(n);
        EXPECT_EQ(mesh.num_elements(), n * n);
        EXPECT_EQ(mesh.num_edges(), 2 * n * (n + 1));
        EXPECT_EQ(mesh.num_vertices(), (n + 1) * (n + 1));
        EXPECT_EQ(mesh.num_boundary_edges(), 4 * n);
        EXPECT_DOUBLE_EQ(mesh.mesh_size(), 1.0 / n);
        EXPECT_NEAR(total_area(mesh), 1.0, 1e-12);
        EXPECT_EQ(mesh.num_vertices() - mesh.num_edges() + mesh.num_elements(), 1);
        expect_consistent(mesh);
    }
    EXPECT_EQ(count_interior_edges(uniform_rectangles(2)), 4);
}

TEST(UniformTriangles, CountsMatchEnumeration)
{
    const PolyMesh one = uniform_triangles(1);
    EXPECT_EQ(one.num_elements(), 2);
    EXPECT_EQ(one.num_edges(), 5);

    for (int n : {2, 4, 5}) {
        const PolyMesh mesh = uniform_triangles(n);
        EXPECT_EQ(mesh.num_elements(), 2 * n * n);
        EXPECT_EQ(mesh.num_edges(), 2 * n * (n + 1) + n * n);
        EXPECT_NEAR(total_area(mesh), 1.0, 1e-12);
        EXPECT_EQ(mesh.num_vertices() - mesh.num_edges() + mesh.num_elements(), 1);
        EXPECT_DOUBLE_EQ(mesh.mesh_size(), 1.0 / n);
        expect_consistent(mesh);
    }
}

TEST(UniformTriangles, AreasByShoelace)
{
    const PolyMesh mesh = uniform_triangles(2);
    for (const auto& el : mesh.elements()) {
        const Point& a = mesh.vertex(el.vertex_ids[0]);
        const Point& b = mesh.vertex(el.vertex_ids[1]);
        const Point& c = mesh.vertex(el.vertex_ids[2]);
        const double shoelace = 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
        EXPECT_NEAR(shoelace, 0.125, 1e-15);
        EXPECT_NEAR(el.area, 0.125, 1e-15);
    }
}

TEST(UniformTriangles, DiagonalsHaveNegativeSlope)
{
    const PolyMesh mesh = uniform_triangles(3);
    int diagonals = 0;
    for (const auto& e : mesh.edges()) {
        const Point d = mesh.vertex(e.endpoint_ids[1]) - mesh.vertex(e.endpoint_ids[0]);
        if (std::abs(d.x()) > 1e-12 && std::abs(d.y()) > 1e-12) {
            EXPECT_NEAR(d.y() / d.x(), -1.0, 1e-12);
            ++diagonals;
        }
    }
    EXPECT_EQ(diagonals, 9);
}

TEST(UniformMeshes, RejectNonPositiveN)
{
    EXPECT_THROW(uniform_rectangles(0), std::invalid_argument);
    EXPECT_THROW(uniform_triangles(0), std::invalid_argument);
    EXPECT_THROW(uniform_triangles(-2), std::invalid_argument);
}

TEST(LoadMesh, RoundTripsUniformRectangles)
{
    const PolyMesh mesh = uniform_rectangles(2);
    std::stringstream ss;
    write_mesh(ss, mesh);
    const PolyMesh back = load_mesh(ss);
    ASSERT_EQ(back.num_vertices(), mesh.num_vertices());
    ASSERT_EQ(back.num_elements(), mesh.num_elements());
    ASSERT_EQ(back.num_edges(), mesh.num_edges());
    for (int v = 0; v < mesh.num_vertices(); ++v) EXPECT_EQ(back.vertex(v), mesh.vertex(v));
    for (int t = 0; t < mesh.num_elements(); ++t)
        EXPECT_EQ(back.element(t).vertex_ids, mesh.element(t).vertex_ids);
    for (int e = 0; e < mesh.num_edges(); ++e)
        EXPECT_EQ(back.edge(e).endpoint_ids, mesh.edge(e).endpoint_ids);
}

TEST(LoadMesh, ClockwiseTriangleIsTopologyError)
{
    std::istringstream in("wgmesh 1\nv 0 0\nv 1 0\nv 0 1\np 3 0 2 1\n");
    EXPECT_THROW(load_mesh(in), MeshTopologyError);
}

TEST(LoadMesh, ZeroAreaIsTopologyError)
{
    std::istringstream in("wgmesh 1\nv 0 0\nv 1 0\nv 2 0\np 3 0 1 2\n");
    EXPECT_THROW(load_mesh(in), MeshTopologyError);
}

TEST(LoadMesh, EdgeSharedByThreeElementsIsTopologyError)
{
    // two triangles above edge (0,1) stacked on one below
    std::istringstream in(
        "wgmesh 1\nv 0 0\nv 1 0\nv 0.5 1\nv 0.5 -1\nv 0.5 2\n"
        "p 3 0 1 2\np 3 1 0 3\np 3 0 1 4\n");
    EXPECT_THROW(load_mesh(in), MeshTopologyError);
}

TEST(LoadMesh, SelfIntersectingPolygonIsTopologyError)
{
    // counterclockwise by signed area, but the edges cross
    std::istringstream in("wgmesh 1\nv 0 0\nv 2 0\nv 2 2\nv 1 -1\nv 0 2\np 5 0 1 2 3 4\n");
    EXPECT_THROW(load_mesh(in), MeshTopologyError);
}

TEST(LoadMesh, MalformedInputIsParseError)
{
    {
        std::istringstream in("mesh 2\nv 0 0\n");
        EXPECT_THROW(load_mesh(in), MeshParseError);
    }
    {
        std::istringstream in("wgmesh 1\nv 0 zero\n");
        EXPECT_THROW(load_mesh(in), MeshParseError);
    }
    {
        std::istringstream in("wgmesh 1\nv 0 0\nv 1 0\nv 0 1\np 3 0 1 7\n");
        EXPECT_THROW(load_mesh(in), MeshError);
    }
    {
        std::istringstream in("wgmesh 1\nv 0 0\nv 1 0\nv 0 1\np 4 0 1 2\n");
        EXPECT_THROW(load_mesh(in), MeshParseError);
    }
    {
        std::istringstream in("wgmesh 1\nq 0 0\n");
        EXPECT_THROW(load_mesh(in), MeshParseError);
    }
}

TEST(LoadMesh, CommentsAndBlankLines)
{
    std::istringstream in("# leading comment\nwgmesh 1\n\nv 0 0 # origin\nv 1 0\nv 0 1\np 3 0 1 2\n");
    const PolyMesh mesh = load_mesh(in);
    EXPECT_EQ(mesh.num_elements(), 1);
    EXPECT_NEAR(mesh.element(0).area, 0.5, 1e-15);
}

// Three connected squares always share at least two edges, so the L has two
// interior edges.
TEST(LoadMesh, LShapedFixture)
{
    const PolyMesh mesh = load_mesh_file(test::fixture_path("l_shape.wgmesh"));
    EXPECT_EQ(mesh.num_elements(), 3);
    EXPECT_EQ(mesh.num_vertices(), 8);
    EXPECT_EQ(mesh.num_edges(), 10);
    EXPECT_EQ(count_interior_edges(mesh), 2);
    EXPECT_NEAR(total_area(mesh), 3.0, 1e-12);
    EXPECT_EQ(mesh.num_vertices() - mesh.num_edges() + mesh.num_elements(), 1);
    expect_consistent(mesh);
}

TEST(LoadMesh, PolygonFixture)
{
    const PolyMesh mesh = test::polygon6_mesh();
    EXPECT_EQ(mesh.num_elements(), 6);
    int pentagons = 0;
    for (const auto& el : mesh.elements()) pentagons += el.vertex_ids.size() == 5 ? 1 : 0;
    EXPECT_EQ(pentagons, 2);
    EXPECT_NEAR(total_area(mesh), 1.0, 1e-12);
    EXPECT_EQ(mesh.num_vertices() - mesh.num_edges() + mesh.num_elements(), 1);
    EXPECT_DOUBLE_EQ(mesh.mesh_size(), mesh.h_max());
    expect_consistent(mesh);
}

TEST(LoadMesh, MissingFileIsReported)
{
    EXPECT_THROW(load_mesh_file("/nonexistent/mesh.wgmesh"), MeshError);
}
