#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "helm/types.hpp"

namespace helm {

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  std::array<int, 2> nodes{};              // nodes[0] < nodes[1]
  std::array<int, 2> triangles{-1, -1};    // triangles[1] < 0 on the boundary

  bool on_boundary() const { return triangles[1] < 0; }
};

/// Immutable conforming triangulation. Triangles are stored counterclockwise;
/// edges are numbered in lexicographic order of their (sorted) node pairs.
class Mesh {
 public:
  using Triangle = std::array<int, 3>;

  /// Builds all connectivity. Clockwise triangles are reoriented; triangles
  /// with zero area, edges shared by more than two triangles, and unused
  /// nodes are rejected with MeshError.
  static Mesh from_triangles(std::vector<Point2> nodes, std::vector<Triangle> triangles);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Point2> nodes() const { return nodes_; }
  const Point2& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  std::span<const Triangle> triangles() const { return triangles_; }
  const Triangle& triangle(int t) const { return triangles_.at(static_cast<std::size_t>(t)); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

  /// Edge opposite local vertex j of triangle t.
  int triangle_edge(int t, int j) const { return tri_edges_[static_cast<std::size_t>(3 * t + j)]; }

  /// Triangles incident to node i, ascending.
  std::span<const int> node_triangles(int i) const;
  /// Nodes sharing an edge with node i, ascending.
  std::span<const int> node_neighbors(int i) const;

  std::span<const int> boundary_nodes() const { return boundary_nodes_; }
  bool is_boundary_node(int i) const { return on_boundary_[static_cast<std::size_t>(i)] != 0; }
  /// Boundary nodes where the boundary turns (vertices of the polygonal domain).
  std::span<const int> corner_nodes() const { return corner_nodes_; }

  /// Longest edge length.
  double h_max() const { return h_max_; }
  double area(int t) const;
  double total_area() const;
  double boundary_length() const;

  /// Outward unit normal of a boundary edge.
  Point2 boundary_normal(int e) const;

  /// Coordinate arrays and flattened triangle indices for the SIMD kernels.
  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  std::span<const int> flat_triangles() const;

  /// Checks orientation, edge adjacency, the Euler relation for a simply
  /// connected domain, closed boundary loops and absence of hanging nodes.
  void validate() const;

 private:
  Mesh() = default;

  std::vector<Point2> nodes_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<int> tri_edges_;
  std::vector<int> node_tri_ptr_, node_tri_;
  std::vector<int> node_nbr_ptr_, node_nbr_;
  std::vector<int> boundary_nodes_;
  std::vector<char> on_boundary_;
  std::vector<int> corner_nodes_;
  std::vector<double> xs_, ys_;
  double h_max_ = 0.0;
};

// ---------------------------------------------------------------------------
// Generators

enum class SquareDomain { unit_square, l_shape };
enum class Diagonal { north_east, north_west };

/// Regular hexagon with unit side centered at the origin, 6 m^2 equilateral
/// triangles of side 1/m.
Mesh build_hexagon_mesh(int m);

/// Uniform m x m grid of [0,1]^2 with every cell split along `diagonal`.
/// The L-shape removes [0.5,1] x [0.5,1] and requires even m.
Mesh build_square_mesh(int m, SquareDomain domain = SquareDomain::unit_square,
                       Diagonal diagonal = Diagonal::north_east);

std::vector<Point2> unit_square_polygon();
std::vector<Point2> l_shape_polygon();

/// Conforming Delaunay triangulation of a simple counterclockwise polygon.
/// Boundary edges are split at spacing <= target_h, interior points come from
/// a seeded jittered grid, followed by up to three Laplacian smoothing sweeps
/// and a final re-triangulation.
Mesh delaunay_mesh(std::span<const Point2> polygon, double target_h, std::uint64_t seed);

/// Moves every interior node to a random corner of the box
/// [-amplitude, amplitude]^2 around it. A fixed offset size keeps the largest
/// parallelogram defect proportional to the amplitude on every level, which
/// is what the alpha fit needs.
Mesh jitter_interior_nodes(const Mesh& mesh, double amplitude, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Red refinement

/// Where a fine node came from: a coarse node (b < 0) or the midpoint of the
/// coarse edge (a, b).
struct NodeOrigin {
  int a = -1;
  int b = -1;

  bool is_coarse_node() const { return b < 0; }
};

struct ParentMap {
  std::vector<int> fine_to_coarse_triangle;
  std::vector<NodeOrigin> fine_node_origin;
};

struct Refinement {
  Mesh fine;
  ParentMap parents;
};

/// Splits every triangle into four congruent children through its edge
/// midpoints. Coarse nodes keep their indices; midpoint nodes follow in
/// coarse edge order.
Refinement refine_red(const Mesh& coarse);

/// Verifies that `parents` describes `fine` as a red refinement of `coarse`
/// (node positions exact, children inside their parents). Throws MeshError.
void check_ancestry(const Mesh& coarse, const Mesh& fine, const ParentMap& parents);

}  // namespace helm
