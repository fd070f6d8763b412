#pragma once

#include <array>
#include <vector>

namespace helm {

enum class QuadKind { triangle, edge };

/// Rule on the reference element with weights summing to one. Triangle
/// points are barycentric triples; edge points are abscissae in [0, 1].
struct QuadratureRule {
  QuadKind kind = QuadKind::triangle;
  int degree = 0;
  std::vector<std::array<double, 3>> bary;
  std::vector<double> abscissae;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Symmetric triangle rules (degrees 1-8) and Gauss-Legendre edge rules.
/// Throws std::invalid_argument for degrees outside 1..8.
QuadratureRule quadrature_rule(QuadKind kind, int degree);

}  // namespace helm
