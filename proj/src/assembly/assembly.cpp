#include <stdexcept>

#include "helm/assembly.hpp"
#include "helm/simd/kernels.hpp"

namespace helm {
namespace {

void require_nonempty(const Mesh& mesh) {
  if (mesh.num_triangles() == 0) throw std::invalid_argument("empty mesh");
}

// Triangle contributions S - s M in triangle order, 9 entries each.
void add_volume_terms(SparseBuilder& builder, const Mesh& mesh, const P1Geometry& geo, double stiff, double mass) {
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles()[t];
    const double a = geo.area[t];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double s = a * (geo.gx[3 * t + i] * geo.gx[3 * t + j] + geo.gy[3 * t + i] * geo.gy[3 * t + j]);
        const double m = a * (i == j ? 2.0 : 1.0) / 12.0;
        builder.add(v[i], v[j], stiff * s + mass * m);
      }
    }
  }
}

void add_boundary_terms(SparseBuilder& builder, const Mesh& mesh, Complex scale) {
  for (const Edge& e : mesh.edges()) {
    if (!e.on_boundary()) continue;
    const double len = distance(mesh.node(e.nodes[0]), mesh.node(e.nodes[1]));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) builder.add(e.nodes[i], e.nodes[j], scale * (len * (i == j ? 2.0 : 1.0) / 6.0));
    }
  }
}

std::size_t entry_estimate(const Mesh& mesh) { return 9 * mesh.num_triangles() + 4 * mesh.num_edges(); }

// Adds sum over boundary edges of len * w * value(x) * phi_i(x).
template <class F>
void add_edge_load(std::vector<Complex>& b, const Mesh& mesh, const QuadratureRule& rule, F value) {
  for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(static_cast<int>(e));
    if (!edge.on_boundary()) continue;
    const Point2 a = mesh.node(edge.nodes[0]), c = mesh.node(edge.nodes[1]);
    const double len = distance(a, c);
    const Point2 normal = mesh.boundary_normal(static_cast<int>(e));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = rule.abscissae[q];
      const Complex g = len * rule.weights[q] * value(a + s * (c - a), normal);
      b[static_cast<std::size_t>(edge.nodes[0])] += (1.0 - s) * g;
      b[static_cast<std::size_t>(edge.nodes[1])] += s * g;
    }
  }
}

}  // namespace

P1Geometry p1_geometry(const Mesh& mesh) {
  P1Geometry geo;
  const std::size_t nt = mesh.num_triangles();
  geo.area.resize(nt);
  geo.gx.resize(3 * nt);
  geo.gy.resize(3 * nt);
  simd::TriangleBatch batch{mesh.xs().data(), mesh.ys().data(), mesh.flat_triangles().data(), nt};
  simd::kernels().p1_geometry(batch, {geo.area.data(), geo.gx.data(), geo.gy.data()});
  return geo;
}

Point2 map_point(const Mesh& mesh, int t, const std::array<double, 3>& bary) {
  const auto& v = mesh.triangle(t);
  return bary[0] * mesh.node(v[0]) + bary[1] * mesh.node(v[1]) + bary[2] * mesh.node(v[2]);
}

SparseComplexMatrix assemble_stiffness(const Mesh& mesh) {
  require_nonempty(mesh);
  SparseBuilder builder(mesh.num_nodes());
  builder.reserve(9 * mesh.num_triangles());
  add_volume_terms(builder, mesh, p1_geometry(mesh), 1.0, 0.0);
  return builder.build(true);
}

SparseComplexMatrix assemble_mass(const Mesh& mesh) {
  require_nonempty(mesh);
  SparseBuilder builder(mesh.num_nodes());
  builder.reserve(9 * mesh.num_triangles());
  add_volume_terms(builder, mesh, p1_geometry(mesh), 0.0, 1.0);
  return builder.build(true);
}

SparseComplexMatrix assemble_boundary_mass(const Mesh& mesh) {
  require_nonempty(mesh);
  SparseBuilder builder(mesh.num_nodes());
  add_boundary_terms(builder, mesh, 1.0);
  return builder.build(true);
}

LinearSystem assemble_helmholtz(const Mesh& mesh, const ProblemSpec& p, const LoadQuadrature& quad) {
  require_nonempty(mesh);
  const P1Geometry geo = p1_geometry(mesh);
  const double k = p.k;
  SparseBuilder builder(mesh.num_nodes());
  builder.reserve(entry_estimate(mesh));
  add_volume_terms(builder, mesh, geo, 1.0, -k * k);
  add_boundary_terms(builder, mesh, Complex(0.0, k));

  std::vector<Complex> b(mesh.num_nodes());
  const QuadratureRule& tq = quad.triangle;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles()[t];
    for (std::size_t q = 0; q < tq.size(); ++q) {
      const Complex f = geo.area[t] * tq.weights[q] * source_f(p, map_point(mesh, static_cast<int>(t), tq.bary[q]));
      for (int i = 0; i < 3; ++i) b[static_cast<std::size_t>(v[i])] += tq.bary[q][i] * f;
    }
  }
  if (p.kind == ProblemKind::bessel_exact) {
    add_edge_load(b, mesh, quad.edge, [&p](Point2 x, Point2 n) { return robin_g(p, x, n); });
  }
  return {builder.build(true), std::move(b)};
}

LinearSystem assemble_elliptic_projection(const Mesh& mesh, const ProblemSpec& p, const LoadQuadrature& quad) {
  require_nonempty(mesh);
  if (!p.has_exact) throw NoExactSolution("elliptic projection needs the exact solution");
  const P1Geometry geo = p1_geometry(mesh);
  const double k = p.k;
  SparseBuilder builder(mesh.num_nodes());
  builder.reserve(entry_estimate(mesh));
  add_volume_terms(builder, mesh, geo, 1.0, 0.0);
  add_boundary_terms(builder, mesh, Complex(0.0, k));

  std::vector<Complex> b(mesh.num_nodes());
  const QuadratureRule& tq = quad.triangle;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles()[t];
    for (std::size_t q = 0; q < tq.size(); ++q) {
      const ExactEval e = exact_eval(p, map_point(mesh, static_cast<int>(t), tq.bary[q]));
      const double w = geo.area[t] * tq.weights[q];
      for (int i = 0; i < 3; ++i) b[static_cast<std::size_t>(v[i])] += w * dot(e.gradient, geo.grad(t, i));
    }
  }
  add_edge_load(b, mesh, quad.edge, [&p, k](Point2 x, Point2) { return Complex(0.0, k) * exact_eval(p, x).value; });
  return {builder.build(true), std::move(b)};
}

}  // namespace helm
