#pragma once

#include <optional>
#include <span>
#include <vector>

#include "helm/mesh.hpp"

namespace helm {

/// Geometry of one edge seen from one adjacent triangle. Within the
/// counterclockwise triangle (a, b, c) with e = (a, b), the edge after e is
/// (b, c) and the edge before e is (c, a).
struct EdgeSide {
  int edge = -1;
  int triangle = -1;
  double h_e = 0.0;
  double h_next = 0.0;  // |bc|
  double h_prev = 0.0;  // |ca|
  double theta = 0.0;   // angle at c, opposite e
  double beta = 0.0;    // cot(theta) (h_next^2 - h_prev^2) / 12
  double gamma = 0.0;   // cot(theta) |triangle| / 3
  Point2 tangent;       // unit, along a -> b
  Point2 normal;        // unit, outward from the triangle
};

struct EdgeGeometry {
  std::vector<EdgeSide> sides;
  /// Indices into `sides` for each edge; second entry is -1 on the boundary.
  std::vector<std::array<int, 2>> by_edge;
};

EdgeGeometry edge_geometry(const Mesh& mesh);

struct MeshQualityReport {
  /// Per-level maxima, in the order the meshes were supplied.
  std::vector<double> h;
  std::vector<double> interior_defect;
  std::vector<double> boundary_defect;
  /// Finest-level values.
  double max_interior_defect = 0.0;
  double max_boundary_defect = 0.0;
  /// True when every defect on every level is below 1e-14.
  bool exact = false;
  /// alpha from the interior parallelogram defects, fitted over >= 3 levels.
  std::optional<double> fitted_alpha;
  /// Same fit for the boundary isosceles defects.
  std::optional<double> fitted_alpha_boundary;
};

/// Parallelogram defect |h_prev - h'_prev| + |h_next - h'_next| of each
/// interior edge patch and isosceles defect |h_next - h_prev| of each
/// boundary triangle. Meshes should be ordered coarse to fine.
MeshQualityReport alpha_report(std::span<const Mesh* const> meshes);

}  // namespace helm
