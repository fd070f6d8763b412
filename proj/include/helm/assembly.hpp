#pragma once

#include <vector>

#include "helm/analytic.hpp"
#include "helm/mesh.hpp"
#include "helm/quadrature.hpp"
#include "helm/sparse.hpp"

namespace helm {

/// Constant P1 data per triangle: area and gradients of the barycentric
/// basis functions, computed by the SIMD geometry kernel.
struct P1Geometry {
  std::vector<double> area;
  std::vector<double> gx, gy;  // 3 per triangle

  Point2 grad(std::size_t t, int j) const { return {gx[3 * t + j], gy[3 * t + j]}; }
};

P1Geometry p1_geometry(const Mesh& mesh);

/// Quadrature used for data terms.
struct LoadQuadrature {
  QuadratureRule triangle = quadrature_rule(QuadKind::triangle, 6);
  QuadratureRule edge = quadrature_rule(QuadKind::edge, 6);
};

struct LinearSystem {
  SparseComplexMatrix A;
  std::vector<Complex> b;
};

SparseComplexMatrix assemble_stiffness(const Mesh& mesh);
SparseComplexMatrix assemble_mass(const Mesh& mesh);
SparseComplexMatrix assemble_boundary_mass(const Mesh& mesh);

/// A = S - k^2 M + i k B, b = (f, phi) + <g, phi>.
LinearSystem assemble_helmholtz(const Mesh& mesh, const ProblemSpec& p, const LoadQuadrature& quad = {});

/// A = S + i k B, b = (grad u, grad phi) + i k <u, phi> with the exact u.
LinearSystem assemble_elliptic_projection(const Mesh& mesh, const ProblemSpec& p, const LoadQuadrature& quad = {});

/// Physical point of barycentric coordinates inside triangle t.
Point2 map_point(const Mesh& mesh, int t, const std::array<double, 3>& bary);

}  // namespace helm
