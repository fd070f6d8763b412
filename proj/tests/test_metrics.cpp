#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "helm/analytic.hpp"
#include "helm/assembly.hpp"
#include "helm/extrapolate.hpp"
#include "helm/metrics.hpp"
#include "helm/recovery.hpp"
#include "helm/solve.hpp"

using namespace helm;

namespace {

const QuadratureRule& err_quad() {
  static const QuadratureRule q = quadrature_rule(QuadKind::triangle, 6);
  return q;
}

std::vector<Complex> interpolant(const Mesh& mesh, const ProblemSpec& p) {
  std::vector<Complex> v(mesh.num_nodes());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = exact_eval(p, mesh.nodes()[i]).value;
  return v;
}

std::vector<Complex> fem_solution(const Mesh& mesh, const ProblemSpec& p) {
  const LinearSystem sys = assemble_helmholtz(mesh, p);
  return solve(sys.A, sys.b, {});
}

}  // namespace

TEST(ReferenceNorms, MatchTensorGaussOnTheSquare) {
  const ProblemSpec p = ProblemSpec::bessel(10.0, DomainTag::square);
  const ReferenceNorms ref = reference_norms(p);
  using G = boost::math::quadrature::gauss<double, 20>;
  const int cells = 20;
  double l2 = 0.0, h1 = 0.0;
  auto each = [](auto f) {
    for (std::size_t i = 0; i < G::abscissa().size(); ++i) {
      f(G::abscissa()[i], G::weights()[i]);
      if (G::abscissa()[i] != 0.0) f(-G::abscissa()[i], G::weights()[i]);
    }
  };
  for (int cx = 0; cx < cells; ++cx) {
    for (int cy = 0; cy < cells; ++cy) {
      each([&](double sx, double wx) {
        each([&](double sy, double wy) {
          const Point2 x{(cx + 0.5 * (1 + sx)) / cells, (cy + 0.5 * (1 + sy)) / cells};
          const double w = wx * wy * 0.25 / (cells * cells);
          const ExactEval e = exact_eval(p, x);
          l2 += w * std::norm(e.value);
          h1 += w * norm_sq(e.gradient);
        });
      });
    }
  }
  EXPECT_NEAR(ref.l2 / std::sqrt(l2), 1.0, 1e-10);
  EXPECT_NEAR(ref.h1 / std::sqrt(h1), 1.0, 1e-10);
  EXPECT_NEAR(ref.energy, std::sqrt(h1 + 100.0 * l2), 1e-9 * ref.energy);
}

TEST(ReferenceNorms, AreCached) {
  const ProblemSpec p = ProblemSpec::bessel(7.0, DomainTag::hexagon);
  const ReferenceNorms a = reference_norms(p);
  const ReferenceNorms b = reference_norms(p);
  EXPECT_EQ(a.h1, b.h1);
  EXPECT_THROW(reference_norms(ProblemSpec::gaussian(7.0, DomainTag::square)), NoExactSolution);
}

TEST(ErrorBundle, EnergyPythagoras) {
  const double k = 10.0;
  const ProblemSpec p = ProblemSpec::bessel(k, DomainTag::square);
  const Mesh mesh = build_square_mesh(16);
  const ErrorBundle e = error_bundle(mesh, fem_solution(mesh, p), p, err_quad());
  EXPECT_NEAR(e.energy_err * e.energy_err, e.h1_semi_err * e.h1_semi_err + k * k * e.l2_err * e.l2_err,
              1e-12 * e.energy_err * e.energy_err);
  EXPECT_DOUBLE_EQ(e.rel_h1, e.h1_semi_err / e.reference.h1);
  EXPECT_DOUBLE_EQ(e.rel_l2, e.l2_err / e.reference.l2);
  EXPECT_DOUBLE_EQ(e.rel_energy, e.energy_err / e.reference.energy);
}

TEST(ErrorBundle, InterpolantIsNotExact) {
  const ProblemSpec p = ProblemSpec::bessel(10.0, DomainTag::hexagon);
  const Mesh mesh = build_hexagon_mesh(32);
  const ErrorBundle e = error_bundle(mesh, interpolant(mesh, p), p, err_quad());
  EXPECT_GT(e.l2_err, 0.0);
  EXPECT_GT(e.h1_semi_err, 0.0);
}

TEST(ErrorBundle, InterpolantGradientConvergesAtOrderOne) {
  const ProblemSpec p = ProblemSpec::bessel(10.0, DomainTag::hexagon);
  std::vector<double> h, err;
  for (int m : {32, 64, 128}) {
    const Mesh mesh = build_hexagon_mesh(m);
    h.push_back(1.0 / m);
    err.push_back(error_bundle(mesh, interpolant(mesh, p), p, err_quad()).rel_h1);
  }
  EXPECT_NEAR(fit_order(h, err), 1.0, 0.05);
  EXPECT_NEAR(fit_order_ls(h, err), 1.0, 0.05);
}

TEST(ErrorBundle, FemErrorAtKFiveHasNoPlateau) {
  const ProblemSpec p = ProblemSpec::bessel(5.0, DomainTag::hexagon);
  std::vector<double> h, err;
  for (int m : {8, 16, 32, 64}) {
    const Mesh mesh = build_hexagon_mesh(m);
    h.push_back(1.0 / m);
    err.push_back(error_bundle(mesh, fem_solution(mesh, p), p, err_quad()).rel_h1);
  }
  EXPECT_NEAR(fit_order(h, err), 1.0, 0.05);
  for (std::size_t i = 1; i < err.size(); ++i) EXPECT_LT(err[i], err[i - 1]);
}

TEST(GradientErrors, SquareK10AtM64) {
  const ProblemSpec p = ProblemSpec::bessel(10.0, DomainTag::square);
  const Mesh mesh = build_square_mesh(64);
  const std::vector<Complex> uh = fem_solution(mesh, p);
  const ErrorBundle e = error_bundle(mesh, uh, p, err_quad());
  EXPECT_NEAR(e.rel_h1 / 5.8610e-02, 1.0, 0.05);

  const GradientRecovery rec(std::make_shared<const Mesh>(mesh));
  const double h1 = reference_norms(p).h1;
  const double ppr = grad_error_l2(mesh, rec.apply(uh), p, err_quad()) / h1;
  EXPECT_NEAR(ppr / 1.2986e-02, 1.0, 0.10);
  const double gui = grad_error_l2(mesh, rec.apply(interpolant(mesh, p)), p, err_quad()) / h1;
  EXPECT_NEAR(gui / 7.4567e-03, 1.0, 0.01);

  // The piecewise-constant variant applied to the raw gradient is the H1
  // seminorm error.
  const auto eg = element_gradients(mesh, p1_geometry(mesh), uh);
  EXPECT_NEAR(piecewise_grad_error_l2(mesh, eg, p, err_quad()), e.h1_semi_err, 1e-13);
}

TEST(GradientErrors, GradDiffVanishesForAffine) {
  const Mesh mesh = delaunay_mesh(unit_square_polygon(), 0.1, 2);
  std::vector<Complex> u(mesh.num_nodes());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = Complex(1.0, 2.0) * mesh.nodes()[i].x - mesh.nodes()[i].y;
  const auto g = recover_gradient(NodalField(std::make_shared<const Mesh>(mesh), u));
  EXPECT_NEAR(grad_diff_l2(mesh, g.values(), u), 0.0, 1e-12);
}

TEST(GradientErrors, GradDiffMatchesQuadratureAndDistinguishesFields) {
  const ProblemSpec p = ProblemSpec::bessel(10.0, DomainTag::square);
  Mesh coarse = build_square_mesh(16);
  Refinement r = refine_red(coarse);
  const LevelPair pair(std::make_shared<const Mesh>(std::move(coarse)), std::make_shared<const Mesh>(std::move(r.fine)),
                       std::move(r.parents));
  const auto uc = fem_solution(*pair.coarse, p), uf = fem_solution(*pair.fine, p);
  const auto gc = GradientRecovery(pair.coarse).apply(uc), gf = GradientRecovery(pair.fine).apply(uf);
  const double plain = grad_diff_l2(*pair.fine, gf, uf);
  const auto rg = richardson(gf, prolong<CVec2>(pair, gc));
  const double extrap = grad_diff_l2(*pair.fine, rg, uf);
  EXPECT_NE(plain, extrap);
  EXPECT_NEAR(extrap, estimator_eta(pair, gc, gf, uf), 1e-15);

  // Brute-force the integral with a degree-4 rule.
  const P1Geometry geo = p1_geometry(*pair.fine);
  const auto eg = element_gradients(*pair.fine, geo, uf);
  const QuadratureRule q4 = quadrature_rule(QuadKind::triangle, 4);
  double s = 0.0;
  for (std::size_t t = 0; t < pair.fine->num_triangles(); ++t) {
    const auto& tri = pair.fine->triangle(static_cast<int>(t));
    for (std::size_t i = 0; i < q4.size(); ++i) {
      CVec2 v{};
      for (int j = 0; j < 3; ++j) v += q4.bary[i][static_cast<std::size_t>(j)] * gf[static_cast<std::size_t>(tri[j])];
      s += geo.area[t] * q4.weights[i] * norm_sq(v - eg[t]);
    }
  }
  EXPECT_NEAR(plain, std::sqrt(s), 1e-13 * plain);
}

TEST(EllipticProjection, RecoveredGradientIsSuperconvergent) {
  const ProblemSpec p = ProblemSpec::bessel(10.0, DomainTag::hexagon);
  std::vector<double> h, err;
  for (int m : {8, 16, 32, 64}) {
    const Mesh mesh = build_hexagon_mesh(m);
    const LinearSystem sys = assemble_elliptic_projection(mesh, p);
    const auto ph = solve(sys.A, sys.b, {});
    h.push_back(1.0 / m);
    err.push_back(grad_error_l2(mesh, GradientRecovery(std::make_shared<const Mesh>(mesh)).apply(ph), p, err_quad()));
  }
  EXPECT_NEAR(fit_order(h, err), 2.0, 0.15);
}

TEST(FitOrder, Examples) {
  EXPECT_NEAR(fit_order(std::vector<double>{0.5, 0.25}, std::vector<double>{4e-2, 1e-2}), 2.0, 1e-14);
  EXPECT_NEAR(fit_order(std::vector<double>{1.0 / 256, 1.0 / 512}, std::vector<double>{8.1935e-04, 2.0524e-04}), 1.997,
              1e-3);
  EXPECT_THROW(fit_order(std::vector<double>{0.5, 0.3}, std::vector<double>{1, 2}), std::invalid_argument);
  EXPECT_THROW(fit_order(std::vector<double>{0.5}, std::vector<double>{1}), std::invalid_argument);
  // Exact power law.
  std::vector<double> h{0.1, 0.05, 0.025, 0.0125}, e;
  for (double x : h) e.push_back(3.0 * std::pow(x, 1.5));
  EXPECT_NEAR(fit_order_ls(h, e), 1.5, 1e-12);
}

TEST(CriticalMeshSize, NestedTolerancesAndMonotoneInK) {
  const CriticalResult loose = critical_mesh_size(10.0, 0.5, CriticalQuantity::fem_grad);
  const CriticalResult tight = critical_mesh_size(10.0, 0.1, CriticalQuantity::fem_grad);
  const CriticalResult higher = critical_mesh_size(20.0, 0.5, CriticalQuantity::fem_grad);
  ASSERT_TRUE(loose.reached);
  ASSERT_TRUE(tight.reached);
  ASSERT_TRUE(higher.reached);
  EXPECT_GE(loose.h, tight.h);
  EXPECT_GE(loose.h, higher.h);
  EXPECT_DOUBLE_EQ(loose.h, 1.0 / loose.m);
  EXPECT_LE(loose.solves, 12);
  // m is minimal among the evaluated sizes meeting the tolerance, and m - 1
  // was evaluated and missed it.
  bool below_missed = false;
  for (auto [m, e] : loose.evaluations) {
    if (e <= 0.5) {
      EXPECT_GE(m, loose.m);
    }
    if (m == loose.m - 1) below_missed = e > 0.5;
  }
  EXPECT_TRUE(below_missed);
}

TEST(CriticalMeshSize, RecoveredGradientNeedsCoarserMesh) {
  const CriticalResult fem = critical_mesh_size(15.0, 0.3, CriticalQuantity::fem_grad);
  const CriticalResult ppr = critical_mesh_size(15.0, 0.3, CriticalQuantity::recovered_grad);
  ASSERT_TRUE(fem.reached && ppr.reached);
  EXPECT_LE(ppr.m, fem.m);
}

TEST(CriticalMeshSize, ReportsNotReached) {
  CriticalOptions opts;
  opts.m_max = 12;
  const CriticalResult r = critical_mesh_size(20.0, 0.01, CriticalQuantity::fem_grad, opts);
  EXPECT_FALSE(r.reached);
}

TEST(CriticalMeshSize, RejectsBadTolerance) {
  EXPECT_THROW(critical_mesh_size(10.0, 0.0, CriticalQuantity::fem_grad), std::invalid_argument);
  EXPECT_THROW(critical_mesh_size(10.0, 1.0, CriticalQuantity::fem_grad), std::invalid_argument);
}
