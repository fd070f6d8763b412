#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "helm/mesh.hpp"

namespace helm {

Mesh build_hexagon_mesh(int m) {
  if (m < 1) throw std::invalid_argument("hexagon mesh needs m >= 1");
  // Axial lattice coordinates (i, j) -> i * a + j * b with a = (1/m, 0),
  // b = (1/(2m), sqrt(3)/(2m)); the hexagon is |i|, |j|, |i + j| <= m.
  const double h = 1.0 / m;
  const double s3 = std::sqrt(3.0);
  const int w = 2 * m + 1;
  std::vector<int> index(static_cast<std::size_t>(w * w), -1);
  std::vector<Point2> nodes;
  auto inside = [m](int i, int j) { return std::abs(i) <= m && std::abs(j) <= m && std::abs(i + j) <= m; };
  auto slot = [m, w](int i, int j) { return static_cast<std::size_t>((j + m) * w + (i + m)); };
  for (int j = -m; j <= m; ++j) {
    for (int i = -m; i <= m; ++i) {
      if (!inside(i, j)) continue;
      index[slot(i, j)] = static_cast<int>(nodes.size());
      nodes.push_back({h * (i + 0.5 * j), h * 0.5 * s3 * j});
    }
  }
  std::vector<Mesh::Triangle> tris;
  tris.reserve(static_cast<std::size_t>(6 * m * m));
  for (int j = -m; j < m; ++j) {
    for (int i = -m; i < m; ++i) {
      if (inside(i, j) && inside(i + 1, j) && inside(i, j + 1)) {
        tris.push_back({index[slot(i, j)], index[slot(i + 1, j)], index[slot(i, j + 1)]});
      }
      if (inside(i + 1, j) && inside(i + 1, j + 1) && inside(i, j + 1)) {
        tris.push_back({index[slot(i + 1, j)], index[slot(i + 1, j + 1)], index[slot(i, j + 1)]});
      }
    }
  }
  return Mesh::from_triangles(std::move(nodes), std::move(tris));
}

Mesh build_square_mesh(int m, SquareDomain domain, Diagonal diagonal) {
  if (m < 1) throw std::invalid_argument("square mesh needs m >= 1");
  const bool lshape = domain == SquareDomain::l_shape;
  if (lshape && m % 2 != 0) throw std::invalid_argument("L-shape mesh needs even m");
  const int half = m / 2;
  auto cell_kept = [&](int i, int j) { return !(lshape && i >= half && j >= half); };
  auto node_kept = [&](int i, int j) { return !(lshape && i > half && j > half); };

  std::vector<int> index(static_cast<std::size_t>((m + 1) * (m + 1)), -1);
  std::vector<Point2> nodes;
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i <= m; ++i) {
      if (!node_kept(i, j)) continue;
      index[static_cast<std::size_t>(j * (m + 1) + i)] = static_cast<int>(nodes.size());
      nodes.push_back({static_cast<double>(i) / m, static_cast<double>(j) / m});
    }
  }
  auto id = [&](int i, int j) { return index[static_cast<std::size_t>(j * (m + 1) + i)]; };
  std::vector<Mesh::Triangle> tris;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (!cell_kept(i, j)) continue;
      const int sw = id(i, j), se = id(i + 1, j), ne = id(i + 1, j + 1), nw = id(i, j + 1);
      if (diagonal == Diagonal::north_east) {
        tris.push_back({sw, se, ne});
        tris.push_back({sw, ne, nw});
      } else {
        tris.push_back({sw, se, nw});
        tris.push_back({se, ne, nw});
      }
    }
  }
  return Mesh::from_triangles(std::move(nodes), std::move(tris));
}

std::vector<Point2> unit_square_polygon() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

std::vector<Point2> l_shape_polygon() { return {{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}}; }

Mesh jitter_interior_nodes(const Mesh& mesh, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto offset = [&rng, amplitude] { return (rng() >> 63) != 0 ? amplitude : -amplitude; };
  std::vector<Point2> nodes(mesh.nodes().begin(), mesh.nodes().end());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double dx = offset();
    const double dy = offset();
    if (mesh.is_boundary_node(static_cast<int>(i))) continue;
    nodes[i].x += dx;
    nodes[i].y += dy;
  }
  std::vector<Mesh::Triangle> tris(mesh.triangles().begin(), mesh.triangles().end());
  return Mesh::from_triangles(std::move(nodes), std::move(tris));
}

}  // namespace helm
