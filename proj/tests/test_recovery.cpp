#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "helm/assembly.hpp"
#include "helm/mesh.hpp"
#include "helm/recovery.hpp"

using namespace helm;

namespace {

std::shared_ptr<const Mesh> share(Mesh m) { return std::make_shared<const Mesh>(std::move(m)); }

std::vector<Complex> sample(const Mesh& mesh, const std::function<Complex(Point2)>& f) {
  std::vector<Complex> v(mesh.num_nodes());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(mesh.nodes()[i]);
  return v;
}

struct Monomial {
  std::function<Complex(Point2)> f;
  std::function<Point2(Point2)> grad;
};

std::vector<Monomial> monomials() {
  return {{[](Point2) { return Complex(1.0); }, [](Point2) { return Point2{0, 0}; }},
          {[](Point2 p) { return Complex(p.x); }, [](Point2) { return Point2{1, 0}; }},
          {[](Point2 p) { return Complex(p.y); }, [](Point2) { return Point2{0, 1}; }},
          {[](Point2 p) { return Complex(p.x * p.x); }, [](Point2 p) { return Point2{2 * p.x, 0}; }},
          {[](Point2 p) { return Complex(p.x * p.y); }, [](Point2 p) { return Point2{p.y, p.x}; }},
          {[](Point2 p) { return Complex(p.y * p.y); }, [](Point2 p) { return Point2{0, 2 * p.y}; }}};
}

double max_monomial_error(const Mesh& mesh) {
  const GradientRecovery rec(std::make_shared<const Mesh>(mesh));
  double err = 0.0;
  for (const Monomial& m : monomials()) {
    const auto g = rec.apply(sample(mesh, m.f));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Point2 ex = m.grad(mesh.nodes()[i]);
      err = std::max(err, std::abs(g[i].x - ex.x) + std::abs(g[i].y - ex.y));
    }
  }
  return err;
}

double p1_l2(const SparseComplexMatrix& M, const std::vector<Complex>& v) {
  const auto Mv = M.multiply(v);
  Complex s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * Mv[i];
  return std::sqrt(s.real());
}

}  // namespace

TEST(Patch, InteriorNodeOfUniformSquareUsesOneRing) {
  const Mesh mesh = build_square_mesh(4);
  const int z = 2 * 5 + 2;  // node (0.5, 0.5)
  ASSERT_EQ(mesh.node(z), (Point2{0.5, 0.5}));
  const Patch p = build_patch(mesh, z);
  EXPECT_EQ(p.nodes.size(), 7u);
  EXPECT_EQ(p.rings_used, 1);
  EXPECT_EQ(p.nodes.front(), z);
  EXPECT_NEAR(p.scale, std::sqrt(2.0) / 4.0, 1e-15);
}

TEST(Patch, CornerNodeNeedsMoreRings) {
  const Mesh mesh = build_square_mesh(4);
  for (int corner : mesh.corner_nodes()) {
    const Patch p = build_patch(mesh, corner);
    EXPECT_GE(p.rings_used, 2);
    EXPECT_GE(p.nodes.size(), 6u);
  }
}

TEST(Patch, HexagonInteriorNodeIsTheEquilateralStar) {
  const Mesh mesh = build_hexagon_mesh(3);
  int center = -1;
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    if (mesh.nodes()[i] == Point2{0, 0}) center = static_cast<int>(i);
  }
  ASSERT_GE(center, 0);
  const Patch p = build_patch(mesh, center);
  EXPECT_EQ(p.nodes.size(), 7u);
  EXPECT_EQ(p.rings_used, 1);
  EXPECT_NEAR(p.scale, 1.0 / 3.0, 1e-15);
}

TEST(Patch, EveryPatchHasAtLeastSixNodes) {
  const Mesh mesh = delaunay_mesh(l_shape_polygon(), 0.08, 6);
  for (int z = 0; z < static_cast<int>(mesh.num_nodes()); ++z) {
    const Patch p = build_patch(mesh, z);
    EXPECT_GE(p.nodes.size(), 6u);
    EXPECT_LE(p.rings_used, 4);
    EXPECT_TRUE(std::is_sorted(p.nodes.begin() + 1, p.nodes.end()));
  }
}

TEST(Patch, SingleTriangleIsDegenerate) {
  const Mesh mesh = Mesh::from_triangles({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
  EXPECT_THROW(build_patch(mesh, 0), PatchDegenerate);
  try {
    build_patch(mesh, 1);
    FAIL() << "expected PatchDegenerate";
  } catch (const PatchDegenerate& e) {
    EXPECT_EQ(e.node(), 1);
  }
}

TEST(Recovery, ReproducesQuadraticsOnAcceptanceMeshes) {
  EXPECT_LE(max_monomial_error(build_hexagon_mesh(16)), 1e-10);
  EXPECT_LE(max_monomial_error(build_square_mesh(16)), 1e-10);
  EXPECT_LE(max_monomial_error(build_square_mesh(16, SquareDomain::unit_square, Diagonal::north_west)), 1e-10);
  EXPECT_LE(max_monomial_error(build_square_mesh(16, SquareDomain::l_shape)), 1e-10);
  EXPECT_LE(max_monomial_error(delaunay_mesh(unit_square_polygon(), 0.05, 1)), 1e-10);
}

TEST(Recovery, AffineFieldIsExact) {
  const Mesh mesh = jitter_interior_nodes(build_square_mesh(10), 0.02, 4);
  const Complex a(0.3, 1.0), b(-2.0, 0.5), c(1.5, -0.25);
  const auto g = GradientRecovery(share(mesh)).apply(sample(mesh, [&](Point2 p) { return a + b * p.x + c * p.y; }));
  for (const CVec2& v : g) {
    EXPECT_NEAR(std::abs(v.x - b), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(v.y - c), 0.0, 1e-12);
  }
}

TEST(Recovery, RadialQuadratic) {
  const Mesh mesh = delaunay_mesh(l_shape_polygon(), 0.1, 2);
  const auto g = recover_gradient(NodalField(share(mesh), sample(mesh, [](Point2 p) { return Complex(dot(p, p)); })));
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    EXPECT_NEAR(std::abs(g[i].x - 2.0 * mesh.nodes()[i].x), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(g[i].y - 2.0 * mesh.nodes()[i].y), 0.0, 1e-10);
  }
}

TEST(Recovery, IsLinearAndSplitsIntoRealAndImaginaryParts) {
  const Mesh mesh = delaunay_mesh(unit_square_polygon(), 0.1, 7);
  const GradientRecovery rec(share(mesh));
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<Complex> u(mesh.num_nodes()), v(mesh.num_nodes()), w(mesh.num_nodes());
  std::vector<Complex> re(mesh.num_nodes()), im(mesh.num_nodes());
  const Complex a(d(rng), d(rng)), b(d(rng), d(rng));
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = {d(rng), d(rng)};
    v[i] = {d(rng), d(rng)};
    w[i] = a * u[i] + b * v[i];
    re[i] = u[i].real();
    im[i] = u[i].imag();
  }
  const auto gu = rec.apply(u), gv = rec.apply(v), gw = rec.apply(w), gre = rec.apply(re), gim = rec.apply(im);
  const Complex I(0, 1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const CVec2 lin = a * gu[i] + b * gv[i];
    EXPECT_NEAR(std::sqrt(norm_sq(gw[i] - lin)), 0.0, 1e-12 * (1.0 + std::sqrt(norm_sq(lin))));
    const CVec2 split = gre[i] + I * gim[i];
    EXPECT_NEAR(std::sqrt(norm_sq(gu[i] - split)), 0.0, 1e-12 * (1.0 + std::sqrt(norm_sq(split))));
  }
}

TEST(Recovery, ReadsOnlyNodalValues) {
  // A smooth function and its linear interpolant share nodal values, so
  // their recovered gradients are identical.
  auto mesh = share(build_hexagon_mesh(6));
  auto f = [](Point2 p) { return std::exp(Complex(0, 3.0) * p.x) * std::cos(2.0 * p.y); };
  const auto samples = sample(*mesh, f);
  const NodalField interp(mesh, samples);
  const auto g1 = recover_gradient(interp);
  const auto g2 = GradientRecovery(mesh).apply(samples);
  for (std::size_t i = 0; i < samples.size(); ++i) EXPECT_EQ(g1[i], g2[i]);
  EXPECT_EQ(g1.mesh_ptr(), mesh);
}

TEST(Recovery, BoundedByTheGradientNorm) {
  const Mesh mesh = build_hexagon_mesh(16);
  const SparseComplexMatrix M = assemble_mass(mesh), S = assemble_stiffness(mesh);
  const GradientRecovery rec(share(mesh));
  std::mt19937 rng(20);
  std::uniform_real_distribution<double> d(-1, 1);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> v(mesh.num_nodes());
    for (Complex& z : v) z = d(rng);
    const auto g = rec.apply(v);
    std::vector<Complex> gx(g.size()), gy(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      gx[i] = g[i].x;
      gy[i] = g[i].y;
    }
    const double recovered = std::hypot(p1_l2(M, gx), p1_l2(M, gy));
    const auto Sv = S.multiply(v);
    Complex grad2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) grad2 += std::conj(v[i]) * Sv[i];
    worst = std::max(worst, recovered / std::sqrt(grad2.real()));
  }
  EXPECT_LE(worst, 10.0);
}
