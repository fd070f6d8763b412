#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "helm/analytic.hpp"
#include "helm/assembly.hpp"
#include "helm/mesh.hpp"
#include "helm/solve.hpp"

using namespace helm;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

Eigen::MatrixXcd to_dense(const SparseComplexMatrix& a) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.rows()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (int p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) {
      d(static_cast<Eigen::Index>(i), a.col()[static_cast<std::size_t>(p)]) = a.values()[static_cast<std::size_t>(p)];
    }
  }
  return d;
}

struct Dense {
  Eigen::MatrixXd S, M, B;
  Eigen::VectorXcd b;
};

// Element-by-element dense assembly. Gradients come from inverting the affine
// map; mass entries are integrated with a 7x7 collapsed Gauss rule.
Dense brute_force(const Mesh& mesh, const ProblemSpec& p, const LoadQuadrature& quad) {
  const auto n = static_cast<Eigen::Index>(mesh.num_nodes());
  Dense d{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n),
          Eigen::VectorXcd::Zero(n)};
  const auto& gauss = boost::math::quadrature::gauss<double, 7>::abscissa();
  const auto& gw = boost::math::quadrature::gauss<double, 7>::weights();
  std::vector<std::pair<double, double>> nodes1d;
  for (std::size_t i = 0; i < gauss.size(); ++i) {
    nodes1d.push_back({gauss[i], gw[i]});
    if (gauss[i] != 0.0) nodes1d.push_back({-gauss[i], gw[i]});
  }
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
    const auto& tri = mesh.triangle(t);
    const Point2 a = mesh.node(tri[0]), b = mesh.node(tri[1]), c = mesh.node(tri[2]);
    Eigen::Matrix2d J;
    J << b.x - a.x, c.x - a.x, b.y - a.y, c.y - a.y;
    const double detJ = J.determinant();
    const Eigen::Matrix2d Jit = J.inverse().transpose();
    Eigen::Matrix<double, 2, 3> G;
    G.col(0) = Jit * Eigen::Vector2d(-1, -1);
    G.col(1) = Jit * Eigen::Vector2d(1, 0);
    G.col(2) = Jit * Eigen::Vector2d(0, 1);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) d.S(tri[i], tri[j]) += 0.5 * detJ * G.col(i).dot(G.col(j));
    }
    for (auto [u, wu] : nodes1d) {
      for (auto [v, wv] : nodes1d) {
        // Duffy map from [-1,1]^2 to the reference triangle.
        const double s = 0.5 * (1 + u), r = 0.5 * (1 + v) * (1 - s);
        const double w = wu * wv * 0.25 * (1 - s) * detJ;
        const double phi[3] = {1 - s - r, s, r};
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) d.M(tri[i], tri[j]) += w * phi[i] * phi[j];
        }
      }
    }
    const double area = 0.5 * detJ;
    for (std::size_t q = 0; q < quad.triangle.size(); ++q) {
      const auto& l = quad.triangle.bary[q];
      const Point2 x = l[0] * a + l[1] * b + l[2] * c;
      const Complex f = source_f(p, x);
      for (int i = 0; i < 3; ++i) d.b(tri[i]) += area * quad.triangle.weights[q] * f * l[static_cast<std::size_t>(i)];
    }
  }
  for (int e = 0; e < static_cast<int>(mesh.num_edges()); ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.on_boundary()) continue;
    const Point2 a = mesh.node(edge.nodes[0]), c = mesh.node(edge.nodes[1]);
    const double len = distance(a, c);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) d.B(edge.nodes[i], edge.nodes[j]) += len * (i == j ? 1.0 / 3.0 : 1.0 / 6.0);
    }
    const Point2 nrm = mesh.boundary_normal(e);
    for (std::size_t q = 0; q < quad.edge.size(); ++q) {
      const double s = quad.edge.abscissae[q];
      const Complex g = robin_g(p, (1 - s) * a + s * c, nrm);
      d.b(edge.nodes[0]) += len * quad.edge.weights[q] * g * (1 - s);
      d.b(edge.nodes[1]) += len * quad.edge.weights[q] * g * s;
    }
  }
  return d;
}

double sum_all(const SparseComplexMatrix& a) {
  double s = 0.0;
  for (Complex v : a.values()) s += v.real();
  return s;
}

}  // namespace

TEST(Quadrature, TriangleRulesIntegrateBarycentricMonomials) {
  for (int deg = 1; deg <= 8; ++deg) {
    const QuadratureRule rule = quadrature_rule(QuadKind::triangle, deg);
    EXPECT_GE(rule.degree, deg);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    EXPECT_NEAR(wsum, 1.0, 1e-14);
    for (int a = 0; a <= deg; ++a) {
      for (int b = 0; a + b <= deg; ++b) {
        for (int c = 0; a + b + c <= deg; ++c) {
          double q = 0.0;
          for (std::size_t i = 0; i < rule.size(); ++i) {
            q += rule.weights[i] * std::pow(rule.bary[i][0], a) * std::pow(rule.bary[i][1], b) *
                 std::pow(rule.bary[i][2], c);
          }
          // Mean value over the triangle: 2 a! b! c! / (a + b + c + 2)!.
          const double exact = 2.0 * factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 2);
          EXPECT_NEAR(q, exact, 1e-14) << "degree " << deg << " monomial " << a << b << c;
        }
      }
    }
  }
}

TEST(Quadrature, DegreeSixOnX4Y2) {
  // Reference triangle (0,0), (1,0), (0,1): integral of x^4 y^2 is 4! 2! / 8! = 1/840.
  const QuadratureRule rule = quadrature_rule(QuadKind::triangle, 6);
  double q = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) q += 0.5 * rule.weights[i] * std::pow(rule.bary[i][1], 4) * std::pow(rule.bary[i][2], 2);
  EXPECT_NEAR(q, 1.0 / 840.0, 1e-14);
}

TEST(Quadrature, CentroidRule) {
  const QuadratureRule rule = quadrature_rule(QuadKind::triangle, 1);
  ASSERT_EQ(rule.size(), 1u);
  EXPECT_EQ(rule.weights[0], 1.0);
  for (double l : rule.bary[0]) EXPECT_NEAR(l, 1.0 / 3.0, 1e-16);
}

TEST(Quadrature, EdgeRulesAreGaussLegendre) {
  for (int deg = 1; deg <= 8; ++deg) {
    const QuadratureRule rule = quadrature_rule(QuadKind::edge, deg);
    EXPECT_EQ(static_cast<int>(rule.size()), (deg + 2) / 2);
    for (int a = 0; a <= 2 * static_cast<int>(rule.size()) - 1; ++a) {
      double q = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) q += rule.weights[i] * std::pow(rule.abscissae[i], a);
      EXPECT_NEAR(q, 1.0 / (a + 1), 1e-15) << "degree " << deg << " power " << a;
    }
  }
  const QuadratureRule five = quadrature_rule(QuadKind::edge, 5);
  EXPECT_EQ(five.size(), 3u);
}

TEST(Quadrature, RejectsUnsupportedDegrees) {
  EXPECT_THROW(quadrature_rule(QuadKind::triangle, 0), std::invalid_argument);
  EXPECT_THROW(quadrature_rule(QuadKind::triangle, 9), std::invalid_argument);
  EXPECT_THROW(quadrature_rule(QuadKind::edge, 12), std::invalid_argument);
}

TEST(SparseBuilder, SumsDuplicatesAndSortsColumns) {
  SparseBuilder b(3);
  b.add(0, 2, {1, 0});
  b.add(0, 0, {2, 0});
  b.add(0, 2, {0, 3});
  b.add(2, 1, {4, 0});
  const SparseComplexMatrix a = b.build(false);
  EXPECT_EQ(a.nonzeros(), 3u);
  EXPECT_EQ(a.coeff(0, 2), Complex(1, 3));
  EXPECT_EQ(a.coeff(0, 0), Complex(2, 0));
  EXPECT_EQ(a.coeff(1, 1), Complex(0, 0));
  EXPECT_EQ(a.col()[0], 0);
  EXPECT_EQ(a.col()[1], 2);
  EXPECT_FALSE(a.is_symmetric_exact());
  EXPECT_EQ(a.max_abs(), 4.0);
}

TEST(SparseBuilder, MatrixMarketOutput) {
  SparseBuilder b(2);
  b.add(0, 0, {1.5, -2});
  b.add(1, 0, {0, 1});
  b.add(0, 1, {0, 1});
  std::ostringstream os;
  write_matrix_market(os, b.build(true));
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("%%MatrixMarket matrix coordinate complex general\n", 0), 0u);
  EXPECT_NE(s.find("2 2 3\n"), std::string::npos);
  EXPECT_NE(s.find("1 1 1.5 -2\n"), std::string::npos);
  EXPECT_NE(s.find("2 1 0 1\n"), std::string::npos);
}

TEST(SparseMatrix, AddScaleMultiply) {
  const Mesh mesh = build_square_mesh(3);
  const SparseComplexMatrix S = assemble_stiffness(mesh), M = assemble_mass(mesh);
  const SparseComplexMatrix A = S + scaled(M, Complex(0, 2));
  std::vector<Complex> x(mesh.num_nodes());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = {std::cos(1.0 * i), std::sin(0.3 * i)};
  const auto y = A.multiply(x), ys = S.multiply(x), ym = M.multiply(x);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(std::abs(y[i] - (ys[i] + Complex(0, 2) * ym[i])), 0.0, 1e-14);
}

TEST(Assembly, RowSumsAndPartitionOfUnity) {
  const std::vector<std::pair<Mesh, double>> cases{{build_square_mesh(6), 1.0},
                                                   {build_hexagon_mesh(4), 1.5 * std::sqrt(3.0)},
                                                   {delaunay_mesh(l_shape_polygon(), 0.15, 2), 0.75}};
  const double perimeter[] = {4.0, 6.0, 4.0};
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const Mesh& mesh = cases[c].first;
    const SparseComplexMatrix S = assemble_stiffness(mesh);
    const std::vector<Complex> ones(mesh.num_nodes(), 1.0);
    for (Complex v : S.multiply(ones)) EXPECT_NEAR(std::abs(v), 0.0, 1e-12);
    EXPECT_NEAR(sum_all(assemble_mass(mesh)), cases[c].second, 1e-13);
    EXPECT_NEAR(sum_all(assemble_boundary_mass(mesh)), perimeter[c], 1e-13);
  }
}

TEST(Assembly, HelmholtzMatrixIsExactlySymmetric) {
  for (const Mesh& mesh : {build_square_mesh(10), build_hexagon_mesh(5), delaunay_mesh(unit_square_polygon(), 0.1, 3)}) {
    const LinearSystem sys = assemble_helmholtz(mesh, ProblemSpec::bessel(10.0, DomainTag::square));
    EXPECT_TRUE(sys.A.is_symmetric_exact());
    EXPECT_TRUE(sys.A.symmetric());
  }
}

TEST(Assembly, AgreesWithDenseBruteForce) {
  const std::vector<Mesh> meshes{build_square_mesh(8), build_hexagon_mesh(5),
                                 delaunay_mesh(unit_square_polygon(), 0.15, 1)};
  for (const Mesh& mesh : meshes) {
    ASSERT_LE(mesh.num_nodes(), 100u);
    const double k = 7.0;
    const ProblemSpec p = ProblemSpec::bessel(k, DomainTag::square);
    const LoadQuadrature quad;
    const Dense d = brute_force(mesh, p, quad);
    const Eigen::MatrixXcd S = to_dense(assemble_stiffness(mesh)), M = to_dense(assemble_mass(mesh)),
                           B = to_dense(assemble_boundary_mass(mesh));
    EXPECT_LE((S - d.S.cast<Complex>()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((M - d.M.cast<Complex>()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((B - d.B.cast<Complex>()).cwiseAbs().maxCoeff(), 1e-12);
    const LinearSystem sys = assemble_helmholtz(mesh, p, quad);
    const Eigen::MatrixXcd A = d.S.cast<Complex>() - k * k * d.M.cast<Complex>() + Complex(0, k) * d.B.cast<Complex>();
    EXPECT_LE((to_dense(sys.A) - A).cwiseAbs().maxCoeff(), 1e-12);
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i) EXPECT_NEAR(std::abs(sys.b[i] - d.b(static_cast<Eigen::Index>(i))), 0.0, 1e-12);
  }
}

TEST(Assembly, GaussianProblemHasNoBoundaryLoad) {
  const Mesh mesh = build_square_mesh(8);
  const ProblemSpec p = ProblemSpec::gaussian(30.0, DomainTag::square);
  const LinearSystem sys = assemble_helmholtz(mesh, p);
  const Dense d = brute_force(mesh, ProblemSpec::gaussian(30.0, DomainTag::square), {});
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) EXPECT_NEAR(std::abs(sys.b[i] - d.b(static_cast<Eigen::Index>(i))), 0.0, 1e-14);
}

TEST(Assembly, LoadConvergesWithQuadratureDegree) {
  const Mesh mesh = build_hexagon_mesh(16);
  const ProblemSpec p = ProblemSpec::bessel(10.0, DomainTag::hexagon);
  const LoadQuadrature defaults;
  EXPECT_EQ(defaults.triangle.degree, 6);
  EXPECT_EQ(defaults.edge.size(), 4u);
  LoadQuadrature high;
  high.triangle = quadrature_rule(QuadKind::triangle, 8);
  high.edge = quadrature_rule(QuadKind::edge, 8);
  const auto b4 = assemble_helmholtz(mesh, p).b;
  const auto b8 = assemble_helmholtz(mesh, p, high).b;
  std::vector<Complex> diff(b4.size());
  for (std::size_t i = 0; i < b4.size(); ++i) diff[i] = b4[i] - b8[i];
  EXPECT_LE(norm2(diff) / norm2(b8), 1e-8);
}

TEST(Assembly, MapPointIsAffine) {
  const Mesh mesh = build_hexagon_mesh(2);
  const auto& tri = mesh.triangle(5);
  const Point2 x = map_point(mesh, 5, {0.2, 0.3, 0.5});
  const Point2 expect = 0.2 * mesh.node(tri[0]) + 0.3 * mesh.node(tri[1]) + 0.5 * mesh.node(tri[2]);
  EXPECT_NEAR(x.x, expect.x, 1e-15);
  EXPECT_NEAR(x.y, expect.y, 1e-15);
}

TEST(EllipticProjection, MatrixIsStiffnessPlusBoundaryTerm) {
  const Mesh mesh = build_square_mesh(6);
  const double k = 10.0;
  const LinearSystem sys = assemble_elliptic_projection(mesh, ProblemSpec::bessel(k, DomainTag::square));
  const Eigen::MatrixXcd A = to_dense(assemble_stiffness(mesh)) + Complex(0, k) * to_dense(assemble_boundary_mass(mesh));
  EXPECT_LE((to_dense(sys.A) - A).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_TRUE(sys.A.is_symmetric_exact());
}

TEST(EllipticProjection, NonsingularOnSmallMesh) {
  const Mesh mesh = build_square_mesh(4);
  ASSERT_EQ(mesh.num_nodes(), 25u);
  for (double k : {1.0, 10.0, 100.0}) {
    const LinearSystem sys = assemble_elliptic_projection(mesh, ProblemSpec::bessel(k, DomainTag::square));
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_dense(sys.A));
    EXPECT_GT(svd.singularValues().minCoeff(), 1e-3);
  }
}

TEST(EllipticProjection, ReproducesLinearFunctions) {
  // For a linear u the Galerkin solution equals the nodal interpolant.
  const Mesh mesh = delaunay_mesh(unit_square_polygon(), 0.15, 4);
  const double k = 10.0;
  const LinearSystem sys = assemble_elliptic_projection(mesh, ProblemSpec::bessel(k, DomainTag::square));
  const Complex gx(0.7, -0.2), gy(-1.1, 0.4), c0(0.3, 0.3);
  auto u = [&](Point2 x) { return c0 + gx * x.x + gy * x.y; };
  std::vector<Complex> uI(mesh.num_nodes());
  for (std::size_t i = 0; i < uI.size(); ++i) uI[i] = u(mesh.nodes()[i]);
  // Right side by hand: grad u is constant, the boundary integral of a linear
  // times a hat function is exact with the two-point formula below.
  const P1Geometry geo = p1_geometry(mesh);
  std::vector<Complex> b(mesh.num_nodes());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    for (int j = 0; j < 3; ++j) {
      const Point2 g = geo.grad(t, j);
      b[static_cast<std::size_t>(mesh.triangle(static_cast<int>(t))[j])] += geo.area[t] * (gx * g.x + gy * g.y);
    }
  }
  for (const Edge& e : mesh.edges()) {
    if (!e.on_boundary()) continue;
    const double len = distance(mesh.node(e.nodes[0]), mesh.node(e.nodes[1]));
    const Complex ua = u(mesh.node(e.nodes[0])), ub = u(mesh.node(e.nodes[1]));
    b[static_cast<std::size_t>(e.nodes[0])] += Complex(0, k) * len / 6.0 * (2.0 * ua + ub);
    b[static_cast<std::size_t>(e.nodes[1])] += Complex(0, k) * len / 6.0 * (ua + 2.0 * ub);
  }
  const std::vector<Complex> x = solve(sys.A, b, {});
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(std::abs(x[i] - uI[i]), 0.0, 1e-10);
}

TEST(EllipticProjection, RejectsProblemWithoutExactSolution) {
  EXPECT_THROW(assemble_elliptic_projection(build_square_mesh(4), ProblemSpec::gaussian(10.0, DomainTag::square)),
               NoExactSolution);
}
