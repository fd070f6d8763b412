#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "helm/metrics.hpp"

namespace helm {
namespace {

Mesh reference_mesh(DomainTag domain, int m) {
  switch (domain) {
    case DomainTag::hexagon:
      return build_hexagon_mesh(m);
    case DomainTag::square:
      return build_square_mesh(m);
    case DomainTag::lshape:
      return build_square_mesh(m, SquareDomain::l_shape);
  }
  throw std::invalid_argument("unknown domain");
}

}  // namespace

ReferenceNorms reference_norms(const ProblemSpec& p) {
  if (!p.has_exact) throw NoExactSolution("reference norms need the exact solution");
  static std::mutex mutex;
  static std::map<std::tuple<double, int, int>, ReferenceNorms> cache;
  const auto key = std::make_tuple(p.k, static_cast<int>(p.domain), static_cast<int>(p.kind));
  {
    const std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  int m = std::max(256, static_cast<int>(std::ceil(4.0 * p.k)));
  m += m % 2;
  const Mesh mesh = reference_mesh(p.domain, m);
  const QuadratureRule q = quadrature_rule(QuadKind::triangle, 8);
  double l2 = 0.0, h1 = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const double area = mesh.area(static_cast<int>(t));
    double sl = 0.0, sh = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const ExactEval e = exact_eval(p, map_point(mesh, static_cast<int>(t), q.bary[i]));
      sl += q.weights[i] * std::norm(e.value);
      sh += q.weights[i] * norm_sq(e.gradient);
    }
    l2 += area * sl;
    h1 += area * sh;
  }
  ReferenceNorms r{std::sqrt(l2), std::sqrt(h1), std::sqrt(h1 + p.k * p.k * l2)};
  const std::lock_guard lock(mutex);
  cache.emplace(key, r);
  return r;
}

std::vector<CVec2> element_gradients(const Mesh& mesh, const P1Geometry& geo, std::span<const Complex> values) {
  std::vector<CVec2> out(mesh.num_triangles());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles()[t];
    CVec2 g;
    for (int j = 0; j < 3; ++j) {
      const Complex u = values[static_cast<std::size_t>(v[j])];
      g.x += geo.gx[3 * t + j] * u;
      g.y += geo.gy[3 * t + j] * u;
    }
    out[t] = g;
  }
  return out;
}

ErrorBundle error_bundle(const Mesh& mesh, std::span<const Complex> values, const ProblemSpec& p,
                         const QuadratureRule& quad) {
  if (values.size() != mesh.num_nodes()) throw std::invalid_argument("field length differs from node count");
  const P1Geometry geo = p1_geometry(mesh);
  const std::vector<CVec2> grads = element_gradients(mesh, geo, values);
  double l2 = 0.0, h1 = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles()[t];
    double sl = 0.0, sh = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) {
      const auto& b = quad.bary[i];
      const ExactEval e = exact_eval(p, map_point(mesh, static_cast<int>(t), b));
      const Complex uh = b[0] * values[static_cast<std::size_t>(v[0])] + b[1] * values[static_cast<std::size_t>(v[1])] +
                         b[2] * values[static_cast<std::size_t>(v[2])];
      sl += quad.weights[i] * std::norm(e.value - uh);
      sh += quad.weights[i] * norm_sq(e.gradient - grads[t]);
    }
    l2 += geo.area[t] * sl;
    h1 += geo.area[t] * sh;
  }
  ErrorBundle out;
  out.reference = reference_norms(p);
  out.l2_err = std::sqrt(l2);
  out.h1_semi_err = std::sqrt(h1);
  out.energy_err = std::sqrt(h1 + p.k * p.k * l2);
  out.rel_l2 = out.l2_err / out.reference.l2;
  out.rel_h1 = out.h1_semi_err / out.reference.h1;
  out.rel_energy = out.energy_err / out.reference.energy;
  return out;
}

double grad_error_l2(const Mesh& mesh, std::span<const CVec2> g, const ProblemSpec& p, const QuadratureRule& quad) {
  if (g.size() != mesh.num_nodes()) throw std::invalid_argument("field length differs from node count");
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles()[t];
    double s = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) {
      const auto& b = quad.bary[i];
      const ExactEval e = exact_eval(p, map_point(mesh, static_cast<int>(t), b));
      const CVec2 gh = b[0] * g[static_cast<std::size_t>(v[0])] + b[1] * g[static_cast<std::size_t>(v[1])] +
                       b[2] * g[static_cast<std::size_t>(v[2])];
      s += quad.weights[i] * norm_sq(e.gradient - gh);
    }
    sum += mesh.area(static_cast<int>(t)) * s;
  }
  return std::sqrt(sum);
}

double piecewise_grad_error_l2(const Mesh& mesh, std::span<const CVec2> per_triangle, const ProblemSpec& p,
                               const QuadratureRule& quad) {
  if (per_triangle.size() != mesh.num_triangles()) throw std::invalid_argument("one value per triangle expected");
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    double s = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) {
      const ExactEval e = exact_eval(p, map_point(mesh, static_cast<int>(t), quad.bary[i]));
      s += quad.weights[i] * norm_sq(e.gradient - per_triangle[t]);
    }
    sum += mesh.area(static_cast<int>(t)) * s;
  }
  return std::sqrt(sum);
}

double grad_diff_l2(const Mesh& mesh, std::span<const CVec2> g, std::span<const Complex> solution) {
  if (g.size() != mesh.num_nodes() || solution.size() != mesh.num_nodes()) {
    throw std::invalid_argument("field length differs from node count");
  }
  const P1Geometry geo = p1_geometry(mesh);
  const std::vector<CVec2> grads = element_gradients(mesh, geo, solution);
  // Degree-2 rule: exact for the piecewise quadratic integrand.
  const QuadratureRule q = quadrature_rule(QuadKind::triangle, 2);
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles()[t];
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const auto& b = q.bary[i];
      const CVec2 gh = b[0] * g[static_cast<std::size_t>(v[0])] + b[1] * g[static_cast<std::size_t>(v[1])] +
                       b[2] * g[static_cast<std::size_t>(v[2])];
      s += q.weights[i] * norm_sq(gh - grads[t]);
    }
    sum += geo.area[t] * s;
  }
  return std::sqrt(sum);
}

double fit_order(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) throw std::invalid_argument("fit_order needs at least two levels");
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (std::fabs(h[i - 1] / h[i] - 2.0) > 1e-9) throw std::invalid_argument("fit_order needs h halving per level");
  }
  const std::size_t n = h.size();
  return std::log2(err[n - 2] / err[n - 1]);
}

double fit_order_ls(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) throw std::invalid_argument("fit_order_ls needs at least two points");
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace helm
