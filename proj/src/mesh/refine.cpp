#include <algorithm>
#include <string>

#include "helm/mesh.hpp"

namespace helm {

Refinement refine_red(const Mesh& coarse) {
  const int nc = static_cast<int>(coarse.num_nodes());
  std::vector<Point2> nodes(coarse.nodes().begin(), coarse.nodes().end());
  ParentMap parents;
  parents.fine_node_origin.resize(coarse.num_nodes() + coarse.num_edges());
  for (int i = 0; i < nc; ++i) parents.fine_node_origin[static_cast<std::size_t>(i)] = {i, -1};
  nodes.reserve(coarse.num_nodes() + coarse.num_edges());
  for (std::size_t e = 0; e < coarse.num_edges(); ++e) {
    const Edge& ed = coarse.edges()[e];
    const Point2 a = coarse.node(ed.nodes[0]), b = coarse.node(ed.nodes[1]);
    nodes.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
    parents.fine_node_origin[nc + e] = {ed.nodes[0], ed.nodes[1]};
  }

  std::vector<Mesh::Triangle> tris;
  tris.reserve(4 * coarse.num_triangles());
  parents.fine_to_coarse_triangle.reserve(4 * coarse.num_triangles());
  for (std::size_t t = 0; t < coarse.num_triangles(); ++t) {
    const auto& v = coarse.triangles()[t];
    const int ti = static_cast<int>(t);
    // m[j] is the midpoint of the edge opposite v[j].
    const int m0 = nc + coarse.triangle_edge(ti, 0);
    const int m1 = nc + coarse.triangle_edge(ti, 1);
    const int m2 = nc + coarse.triangle_edge(ti, 2);
    tris.push_back({v[0], m2, m1});
    tris.push_back({m2, v[1], m0});
    tris.push_back({m1, m0, v[2]});
    tris.push_back({m0, m1, m2});
    for (int c = 0; c < 4; ++c) parents.fine_to_coarse_triangle.push_back(ti);
  }
  return {Mesh::from_triangles(std::move(nodes), std::move(tris)), std::move(parents)};
}

void check_ancestry(const Mesh& coarse, const Mesh& fine, const ParentMap& parents) {
  if (parents.fine_node_origin.size() != fine.num_nodes() ||
      parents.fine_to_coarse_triangle.size() != fine.num_triangles()) {
    throw MeshError("parent map size does not match the fine mesh");
  }
  if (fine.num_triangles() != 4 * coarse.num_triangles()) {
    throw MeshError("fine mesh is not a red refinement of the coarse mesh");
  }
  const int nc = static_cast<int>(coarse.num_nodes());
  for (std::size_t i = 0; i < fine.num_nodes(); ++i) {
    const NodeOrigin o = parents.fine_node_origin[i];
    if (o.a < 0 || o.a >= nc || o.b >= nc) throw MeshError("parent map references a missing coarse node");
    Point2 expect = coarse.node(o.a);
    if (!o.is_coarse_node()) {
      const Point2 b = coarse.node(o.b);
      expect = {0.5 * (expect.x + b.x), 0.5 * (expect.y + b.y)};
    }
    if (!(fine.node(static_cast<int>(i)) == expect)) {
      throw MeshError("fine node " + std::to_string(i) + " does not sit at its recorded origin");
    }
  }
  for (std::size_t t = 0; t < fine.num_triangles(); ++t) {
    const int parent = parents.fine_to_coarse_triangle[t];
    if (parent < 0 || parent >= static_cast<int>(coarse.num_triangles())) {
      throw MeshError("parent map references a missing coarse triangle");
    }
    const auto& pv = coarse.triangle(parent);
    const Point2 a = coarse.node(pv[0]), b = coarse.node(pv[1]), c = coarse.node(pv[2]);
    const double det = cross(b - a, c - a);
    for (int v : fine.triangle(static_cast<int>(t))) {
      const Point2 p = fine.node(v);
      const double l1 = cross(p - a, c - a) / det;
      const double l2 = cross(b - a, p - a) / det;
      const double l0 = 1.0 - l1 - l2;
      if (std::min({l0, l1, l2}) < -1e-12 || std::max({l0, l1, l2}) > 1.0 + 1e-12) {
        throw MeshError("fine triangle " + std::to_string(t) + " lies outside its parent");
      }
    }
  }
}

}  // namespace helm
