#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "helm/mesh.hpp"

namespace helm {

static_assert(sizeof(Mesh::Triangle) == 3 * sizeof(int), "triangles must be tightly packed");

namespace {

double signed_area(Point2 a, Point2 b, Point2 c) { return 0.5 * cross(b - a, c - a); }

// Builds a CSR adjacency from (key, value) pairs sorted by key.
void build_csr(std::size_t n, const std::vector<std::pair<int, int>>& pairs, std::vector<int>& ptr,
               std::vector<int>& out) {
  ptr.assign(n + 1, 0);
  for (const auto& [k, v] : pairs) ++ptr[static_cast<std::size_t>(k) + 1];
  std::partial_sum(ptr.begin(), ptr.end(), ptr.begin());
  out.resize(pairs.size());
  std::vector<int> fill(ptr.begin(), ptr.end() - 1);
  for (const auto& [k, v] : pairs) out[static_cast<std::size_t>(fill[static_cast<std::size_t>(k)]++)] = v;
  for (std::size_t i = 0; i < n; ++i) std::sort(out.begin() + ptr[i], out.begin() + ptr[i + 1]);
}

}  // namespace

Mesh Mesh::from_triangles(std::vector<Point2> nodes, std::vector<Triangle> triangles) {
  if (nodes.empty() || triangles.empty()) throw MeshError("mesh needs at least one triangle");
  const int n = static_cast<int>(nodes.size());
  for (const Point2& p : nodes) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw MeshError("non-finite node coordinate");
  }
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    Triangle& tri = triangles[t];
    for (int v : tri) {
      if (v < 0 || v >= n) throw MeshError("triangle " + std::to_string(t) + " references a missing node");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw MeshError("triangle " + std::to_string(t) + " repeats a vertex");
    }
    const double a = signed_area(nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]);
    if (a == 0.0) throw MeshError("triangle " + std::to_string(t) + " has zero area");
    if (a < 0.0) std::swap(tri[1], tri[2]);
  }

  Mesh mesh;
  mesh.nodes_ = std::move(nodes);
  mesh.triangles_ = std::move(triangles);
  const std::size_t nt = mesh.triangles_.size();

  // Edges: sort (min, max, triangle, local vertex) records.
  struct HalfEdge {
    std::uint64_t key;
    int tri;
    int local;
  };
  std::vector<HalfEdge> half;
  half.reserve(3 * nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const Triangle& tri = mesh.triangles_[t];
    for (int j = 0; j < 3; ++j) {
      const int a = tri[(j + 1) % 3];
      const int b = tri[(j + 2) % 3];
      const auto lo = static_cast<std::uint64_t>(std::min(a, b));
      const auto hi = static_cast<std::uint64_t>(std::max(a, b));
      half.push_back({(lo << 32) | hi, static_cast<int>(t), j});
    }
  }
  std::sort(half.begin(), half.end(), [](const HalfEdge& l, const HalfEdge& r) {
    return l.key != r.key ? l.key < r.key : l.tri < r.tri;
  });
  mesh.tri_edges_.assign(3 * nt, -1);
  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i;
    while (j < half.size() && half[j].key == half[i].key) ++j;
    if (j - i > 2) throw MeshError("edge shared by more than two triangles");
    Edge e;
    e.nodes = {static_cast<int>(half[i].key >> 32), static_cast<int>(half[i].key & 0xffffffffu)};
    e.triangles[0] = half[i].tri;
    if (j - i == 2) e.triangles[1] = half[i + 1].tri;
    const int id = static_cast<int>(mesh.edges_.size());
    for (std::size_t k = i; k < j; ++k) {
      mesh.tri_edges_[static_cast<std::size_t>(3 * half[k].tri + half[k].local)] = id;
    }
    mesh.edges_.push_back(e);
    i = j;
  }

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(3 * nt);
  for (std::size_t t = 0; t < nt; ++t) {
    for (int v : mesh.triangles_[t]) pairs.emplace_back(v, static_cast<int>(t));
  }
  build_csr(mesh.nodes_.size(), pairs, mesh.node_tri_ptr_, mesh.node_tri_);
  for (std::size_t i = 0; i < mesh.nodes_.size(); ++i) {
    if (mesh.node_tri_ptr_[i] == mesh.node_tri_ptr_[i + 1]) {
      throw MeshError("node " + std::to_string(i) + " belongs to no triangle");
    }
  }

  pairs.clear();
  for (const Edge& e : mesh.edges_) {
    pairs.emplace_back(e.nodes[0], e.nodes[1]);
    pairs.emplace_back(e.nodes[1], e.nodes[0]);
  }
  build_csr(mesh.nodes_.size(), pairs, mesh.node_nbr_ptr_, mesh.node_nbr_);

  mesh.on_boundary_.assign(mesh.nodes_.size(), 0);
  for (const Edge& e : mesh.edges_) {
    const double len = distance(mesh.nodes_[e.nodes[0]], mesh.nodes_[e.nodes[1]]);
    mesh.h_max_ = std::max(mesh.h_max_, len);
    if (e.on_boundary()) mesh.on_boundary_[e.nodes[0]] = mesh.on_boundary_[e.nodes[1]] = 1;
  }
  for (std::size_t i = 0; i < mesh.nodes_.size(); ++i) {
    if (mesh.on_boundary_[i]) mesh.boundary_nodes_.push_back(static_cast<int>(i));
  }

  // Corners: boundary nodes whose boundary edges are not collinear.
  std::vector<std::vector<int>> bnbr(mesh.nodes_.size());
  for (const Edge& e : mesh.edges_) {
    if (!e.on_boundary()) continue;
    bnbr[e.nodes[0]].push_back(e.nodes[1]);
    bnbr[e.nodes[1]].push_back(e.nodes[0]);
  }
  for (int i : mesh.boundary_nodes_) {
    const auto& nb = bnbr[i];
    if (nb.size() != 2) {
      mesh.corner_nodes_.push_back(i);
      continue;
    }
    const Point2 p = mesh.nodes_[i];
    const Point2 u = mesh.nodes_[nb[0]] - p;
    const Point2 w = mesh.nodes_[nb[1]] - p;
    if (std::abs(cross(u, w)) > 1e-10 * norm(u) * norm(w) || dot(u, w) > 0.0) mesh.corner_nodes_.push_back(i);
  }

  mesh.xs_.resize(mesh.nodes_.size());
  mesh.ys_.resize(mesh.nodes_.size());
  for (std::size_t i = 0; i < mesh.nodes_.size(); ++i) {
    mesh.xs_[i] = mesh.nodes_[i].x;
    mesh.ys_[i] = mesh.nodes_[i].y;
  }
  return mesh;
}

std::span<const int> Mesh::node_triangles(int i) const {
  const auto k = static_cast<std::size_t>(i);
  return {node_tri_.data() + node_tri_ptr_[k], static_cast<std::size_t>(node_tri_ptr_[k + 1] - node_tri_ptr_[k])};
}

std::span<const int> Mesh::node_neighbors(int i) const {
  const auto k = static_cast<std::size_t>(i);
  return {node_nbr_.data() + node_nbr_ptr_[k], static_cast<std::size_t>(node_nbr_ptr_[k + 1] - node_nbr_ptr_[k])};
}

std::span<const int> Mesh::flat_triangles() const {
  return {reinterpret_cast<const int*>(triangles_.data()), 3 * triangles_.size()};
}

double Mesh::area(int t) const {
  const Triangle& tri = triangle(t);
  return signed_area(nodes_[tri[0]], nodes_[tri[1]], nodes_[tri[2]]);
}

double Mesh::total_area() const {
  double s = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) s += area(static_cast<int>(t));
  return s;
}

double Mesh::boundary_length() const {
  double s = 0.0;
  for (const Edge& e : edges_) {
    if (e.on_boundary()) s += distance(nodes_[e.nodes[0]], nodes_[e.nodes[1]]);
  }
  return s;
}

Point2 Mesh::boundary_normal(int e) const {
  const Edge& ed = edge(e);
  const Triangle& tri = triangle(ed.triangles[0]);
  // Orient the edge along the counterclockwise traversal of its triangle.
  int a = ed.nodes[0], b = ed.nodes[1];
  for (int j = 0; j < 3; ++j) {
    if (tri[j] == ed.nodes[1] && tri[(j + 1) % 3] == ed.nodes[0]) std::swap(a, b);
  }
  const Point2 t = nodes_[b] - nodes_[a];
  const double len = norm(t);
  return {t.y / len, -t.x / len};
}

void Mesh::validate() const {
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    if (!(area(static_cast<int>(t)) > 0.0)) throw MeshError("triangle " + std::to_string(t) + " is not CCW");
  }
  std::vector<int> boundary_degree(nodes_.size(), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    for (int t : ed.triangles) {
      if (t < 0) continue;
      const Triangle& tri = triangles_[static_cast<std::size_t>(t)];
      const int hits = static_cast<int>(std::count(tri.begin(), tri.end(), ed.nodes[0]) +
                                        std::count(tri.begin(), tri.end(), ed.nodes[1]));
      if (hits != 2) throw MeshError("edge adjacency is inconsistent");
    }
    if (ed.on_boundary()) {
      ++boundary_degree[ed.nodes[0]];
      ++boundary_degree[ed.nodes[1]];
    } else {
      // Interior edges must be traversed in opposite directions by the two triangles.
      auto direction = [&](int t) {
        const Triangle& tri = triangles_[static_cast<std::size_t>(t)];
        for (int j = 0; j < 3; ++j) {
          if (tri[j] == ed.nodes[0] && tri[(j + 1) % 3] == ed.nodes[1]) return 1;
        }
        return -1;
      };
      if (direction(ed.triangles[0]) == direction(ed.triangles[1])) {
        throw MeshError("neighbouring triangles have inconsistent orientation");
      }
    }
  }
  for (int i : boundary_nodes_) {
    if (boundary_degree[i] != 2) throw MeshError("boundary is not a set of simple closed loops");
  }
  const long euler = static_cast<long>(nodes_.size()) - static_cast<long>(edges_.size()) +
                     static_cast<long>(triangles_.size());
  if (euler != 1) throw MeshError("Euler relation V - E + T = 1 violated (got " + std::to_string(euler) + ")");

  // Hanging nodes show up as nodes lying inside a boundary-flagged edge.
  const double cell = std::max(h_max_, 1e-300);
  double xmin = nodes_[0].x, ymin = nodes_[0].y;
  for (const Point2& p : nodes_) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
  }
  auto key = [&](long ix, long iy) { return (static_cast<std::uint64_t>(ix) << 32) ^ static_cast<std::uint64_t>(iy); };
  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  for (int i : boundary_nodes_) {
    const long ix = static_cast<long>(std::floor((nodes_[i].x - xmin) / cell));
    const long iy = static_cast<long>(std::floor((nodes_[i].y - ymin) / cell));
    grid[key(ix, iy)].push_back(i);
  }
  for (const Edge& ed : edges_) {
    if (!ed.on_boundary()) continue;
    const Point2 a = nodes_[ed.nodes[0]], b = nodes_[ed.nodes[1]];
    const Point2 mid = 0.5 * (a + b);
    const long cx = static_cast<long>(std::floor((mid.x - xmin) / cell));
    const long cy = static_cast<long>(std::floor((mid.y - ymin) / cell));
    const Point2 d = b - a;
    const double len2 = dot(d, d);
    for (long ix = cx - 1; ix <= cx + 1; ++ix) {
      for (long iy = cy - 1; iy <= cy + 1; ++iy) {
        auto it = grid.find(key(ix, iy));
        if (it == grid.end()) continue;
        for (int i : it->second) {
          if (i == ed.nodes[0] || i == ed.nodes[1]) continue;
          const Point2 p = nodes_[i] - a;
          const double s = dot(p, d) / len2;
          if (s > 1e-12 && s < 1.0 - 1e-12 && std::abs(cross(d, p)) <= 1e-12 * len2) {
            throw MeshError("hanging node " + std::to_string(i) + " on boundary edge");
          }
        }
      }
    }
  }
}

}  // namespace helm
