#include "wgbh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

namespace wgbh {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

// Proper or touching intersection of closed segments [p1,p2] and [q1,q2].
bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2)
{
    auto orient = [](const Point& a, const Point& b, const Point& c) {
        const double v = cross(b - a, c - a);
        return (v > 0.0) - (v < 0.0);
    };
    auto on_segment = [](const Point& a, const Point& b, const Point& c) {
        return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) &&
               std::min(a.y(), b.y()) <= c.y() && c.y() <= std::max(a.y(), b.y());
    };
    const int o1 = orient(p1, p2, q1);
    const int o2 = orient(p1, p2, q2);
    const int o3 = orient(q1, q2, p1);
    const int o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

void check_simple(const std::vector<Point>& pts, int element)
{
    const int n = static_cast<int>(pts.size());
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            // skip edges sharing a vertex
            if (b == a + 1 || (a == 0 && b == n - 1)) continue;
            if (segments_intersect(pts[a], pts[(a + 1) % n], pts[b], pts[(b + 1) % n]))
                throw MeshTopologyError("element " + std::to_string(element) +
                                        " is not a simple polygon");
        }
    }
}

}  // namespace

const Point& Edge::outward_normal(int element) const
{
    if (neighbors[0] == element) return normals[0];
    if (neighbors[1] == element) return normals[1];
    throw MeshError("element " + std::to_string(element) + " is not adjacent to edge");
}

PolyMesh::PolyMesh(std::vector<Point> vertices, std::vector<std::vector<int>> polygons)
    : vertices_(std::move(vertices))
{
    const int nv = num_vertices();
    std::map<std::pair<int, int>, int> edge_index;
    elements_.reserve(polygons.size());

    for (std::size_t t = 0; t < polygons.size(); ++t) {
        const int elem_id = static_cast<int>(t);
        auto& ids = polygons[t];
        const int k = static_cast<int>(ids.size());
        if (k < 3)
            throw MeshTopologyError("element " + std::to_string(t) + " has fewer than 3 vertices");
        for (int id : ids) {
            if (id < 0 || id >= nv)
                throw MeshTopologyError("element " + std::to_string(t) +
                                        " references missing vertex " + std::to_string(id));
        }
        {
            auto sorted = ids;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw MeshTopologyError("element " + std::to_string(t) + " repeats a vertex");
        }

        std::vector<Point> pts;
        pts.reserve(k);
        for (int id : ids) pts.push_back(vertices_[id]);

        double area2 = 0.0;
        Point c = Point::Zero();
        for (int a = 0; a < k; ++a) {
            const Point& p = pts[a];
            const Point& q = pts[(a + 1) % k];
            const double w = cross(p, q);
            area2 += w;
            c += w * (p + q);
        }
        if (!(std::abs(area2) > 0.0) || !std::isfinite(area2))
            throw MeshTopologyError("element " + std::to_string(t) + " has zero area");
        if (area2 < 0.0)
            throw MeshTopologyError("element " + std::to_string(t) + " is clockwise");
        check_simple(pts, elem_id);

        Element el;
        el.vertex_ids = ids;
        el.area = 0.5 * area2;
        el.centroid = c / (3.0 * area2);
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                el.diameter = std::max(el.diameter, (pts[a] - pts[b]).norm());

        el.edge_ids.resize(k);
        for (int a = 0; a < k; ++a) {
            const int v0 = ids[a];
            const int v1 = ids[(a + 1) % k];
            const auto key = std::minmax(v0, v1);
            const Point d = vertices_[v1] - vertices_[v0];
            const Point outward = Point(d.y(), -d.x()).normalized();

            auto it = edge_index.find({key.first, key.second});
            if (it == edge_index.end()) {
                Edge e;
                e.endpoint_ids = {key.first, key.second};
                e.length = d.norm();
                e.neighbors = {elem_id, -1};
                e.normals[0] = outward;
                e.unit_tangent = Point(-outward.y(), outward.x());
                const int id = static_cast<int>(edges_.size());
                edges_.push_back(e);
                edge_index.emplace(std::make_pair(key.first, key.second), id);
                el.edge_ids[a] = id;
            } else {
                Edge& e = edges_[it->second];
                if (e.neighbors[1] >= 0)
                    throw MeshTopologyError("edge (" + std::to_string(key.first) + ", " +
                                            std::to_string(key.second) +
                                            ") is shared by more than two elements");
                if (e.neighbors[0] == elem_id)
                    throw MeshTopologyError("element " + std::to_string(t) + " repeats an edge");
                if (outward.dot(e.normals[0]) > 0.0)
                    throw MeshTopologyError("elements " + std::to_string(e.neighbors[0]) + " and " +
                                            std::to_string(t) +
                                            " traverse a shared edge in the same direction");
                e.neighbors[1] = elem_id;
                e.normals[1] = outward;
                el.edge_ids[a] = it->second;
            }
        }
        h_max_ = std::max(h_max_, el.diameter);
        elements_.push_back(std::move(el));
    }

    for (auto& e : edges_) e.is_boundary = e.neighbors[1] < 0;
}

int PolyMesh::num_boundary_edges() const
{
    return static_cast<int>(
        std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_boundary; }));
}

Point PolyMesh::edge_point(int e, double t) const
{
    const Edge& ed = edges_[e];
    const Point& a = vertices_[ed.endpoint_ids[0]];
    const Point& b = vertices_[ed.endpoint_ids[1]];
    return a + t * (b - a);
}

namespace {

std::vector<Point> grid_vertices(int n)
{
    std::vector<Point> v;
    v.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            v.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    return v;
}

void require_positive(int n)
{
    if (n < 1) throw std::invalid_argument("mesh resolution n must be >= 1");
}

}  // namespace

PolyMesh uniform_rectangles(int n)
{
    require_positive(n);
    auto id = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<std::vector<int>> polys;
    polys.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            polys.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    PolyMesh mesh(grid_vertices(n), std::move(polys));
    mesh.set_mesh_size(1.0 / n);
    return mesh;
}

PolyMesh uniform_triangles(int n)
{
    require_positive(n);
    auto id = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<std::vector<int>> polys;
    polys.reserve(2 * static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            // diagonal from top-left (i, j+1) to bottom-right (i+1, j)
            polys.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
            polys.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    PolyMesh mesh(grid_vertices(n), std::move(polys));
    mesh.set_mesh_size(1.0 / n);
    return mesh;
}

PolyMesh load_mesh(std::istream& in)
{
    std::vector<Point> vertices;
    std::vector<std::vector<int>> polygons;
    bool have_header = false;
    std::string line;
    int line_no = 0;

    auto fail = [&line_no](const std::string& what) {
        throw MeshParseError("line " + std::to_string(line_no) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;

        if (!have_header) {
            int version = 0;
            if (tag != "wgmesh" || !(ls >> version) || version != 1)
                fail("expected header 'wgmesh 1'");
            have_header = true;
        } else if (tag == "v") {
            double x = 0.0, y = 0.0;
            if (!(ls >> x >> y)) fail("vertex needs two coordinates");
            vertices.emplace_back(x, y);
        } else if (tag == "p") {
            int k = 0;
            if (!(ls >> k) || k < 3) fail("polygon needs a vertex count >= 3");
            std::vector<int> ids(k);
            for (int& id : ids) {
                if (!(ls >> id)) fail("polygon has fewer indices than declared");
                if (id < 0) fail("negative vertex index");
            }
            polygons.push_back(std::move(ids));
        } else {
            fail("unknown statement '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
    }
    if (!have_header) throw MeshParseError("missing 'wgmesh 1' header");
    if (polygons.empty()) throw MeshParseError("mesh has no elements");
    for (const auto& p : polygons)
        for (int id : p)
            if (id >= static_cast<int>(vertices.size()))
                throw MeshParseError("vertex index " + std::to_string(id) + " out of range");

    return PolyMesh(std::move(vertices), std::move(polygons));
}

PolyMesh load_mesh_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw MeshParseError("cannot open mesh file '" + path + "'");
    return load_mesh(in);
}

void write_mesh(std::ostream& out, const PolyMesh& mesh)
{
    out << "wgmesh 1\n";
    out << std::setprecision(17);
    for (const auto& v : mesh.vertices()) out << "v " << v.x() << ' ' << v.y() << '\n';
    for (const auto& el : mesh.elements()) {
        out << "p " << el.vertex_ids.size();
        for (int id : el.vertex_ids) out << ' ' << id;
        out << '\n';
    }
}

}  // namespace wgbh
