#include <cmath>
#include <numbers>
#include <stdexcept>

#include "helm/quadrature.hpp"

namespace helm {
namespace {

void add_centroid(QuadratureRule& q, double w) {
  q.bary.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  q.weights.push_back(w);
}

// The three points (a, a, 1 - 2a) and rotations.
void add_orbit3(QuadratureRule& q, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  q.bary.push_back({a, a, b});
  q.bary.push_back({a, b, a});
  q.bary.push_back({b, a, a});
  for (int i = 0; i < 3; ++i) q.weights.push_back(w);
}

// The six permutations of (a, b, 1 - a - b).
void add_orbit6(QuadratureRule& q, double a, double b, double w) {
  const double c = 1.0 - a - b;
  for (const auto& p : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, a, c}, std::array{b, c, a},
                        std::array{c, a, b}, std::array{c, b, a}}) {
    q.bary.push_back(p);
    q.weights.push_back(w);
  }
}

QuadratureRule triangle_rule(int degree) {
  QuadratureRule q;
  q.kind = QuadKind::triangle;
  q.degree = degree;
  switch (degree) {
    case 1:
      add_centroid(q, 1.0);
      break;
    case 2:
      add_orbit3(q, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 3:
    case 4:
      add_orbit3(q, 0.445948490915965, 0.223381589678011);
      add_orbit3(q, 0.091576213509771, 0.109951743655322);
      break;
    case 5: {
      const double s = std::sqrt(15.0);
      add_centroid(q, 9.0 / 40.0);
      add_orbit3(q, (6.0 - s) / 21.0, (155.0 - s) / 1200.0);
      add_orbit3(q, (6.0 + s) / 21.0, (155.0 + s) / 1200.0);
      break;
    }
    case 6:
      add_orbit3(q, 0.249286745170910, 0.116786275726379);
      add_orbit3(q, 0.063089014491502, 0.050844906370207);
      add_orbit6(q, 0.310352451033784, 0.053145049844817, 0.082851075618374);
      break;
    case 7:
    case 8:
      add_centroid(q, 0.144315607677787);
      add_orbit3(q, 0.459292588292723, 0.095091634267285);
      add_orbit3(q, 0.170569307751760, 0.103217370534718);
      add_orbit3(q, 0.050547228317031, 0.032458497623198);
      add_orbit6(q, 0.263112829634638, 0.008394777409958, 0.027230314174435);
      break;
    default:
      throw std::invalid_argument("triangle quadrature degree must be in 1..8");
  }
  return q;
}

QuadratureRule edge_rule(int degree) {
  if (degree < 1 || degree > 8) throw std::invalid_argument("edge quadrature degree must be in 1..8");
  QuadratureRule q;
  q.kind = QuadKind::edge;
  q.degree = degree;
  const int n = (degree + 2) / 2;
  // Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      const double pn = n == 1 ? x : p1;
      dp = n * (x * pn - p0) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    q.abscissae.push_back(0.5 * (1.0 - x));
    q.weights.push_back(1.0 / ((1.0 - x * x) * dp * dp));
  }
  return q;
}

}  // namespace

QuadratureRule quadrature_rule(QuadKind kind, int degree) {
  return kind == QuadKind::triangle ? triangle_rule(degree) : edge_rule(degree);
}

}  // namespace helm
