#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "helm/mesh.hpp"
#include "helm/simd/kernels.hpp"

using namespace helm;

namespace {

std::vector<Complex> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

void expect_close(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE(std::abs(a[i] - b[i]), tol) << "index " << i;
}

class SimdEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
#if defined(HELM_HAVE_AVX2)
    if (!simd::avx2_supported()) GTEST_SKIP() << "CPU lacks AVX2/FMA";
#else
    GTEST_SKIP() << "built without AVX2 kernels";
#endif
  }
#if defined(HELM_HAVE_AVX2)
  const simd::KernelTable& ref = simd::scalar_kernels();
  const simd::KernelTable& vec = simd::avx2_kernels();
#endif
};

}  // namespace

#if defined(HELM_HAVE_AVX2)

TEST_F(SimdEquivalence, CaxpyMatchesScalarForOddAndEvenLengths) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {0u, 1u, 2u, 3u, 17u, 64u, 1001u}) {
    const auto x = random_vector(n, rng);
    auto y1 = random_vector(n, rng);
    auto y2 = y1;
    const Complex a(0.3, -1.7);
    ref.caxpy(n, a, x.data(), y1.data());
    vec.caxpy(n, a, x.data(), y2.data());
    expect_close(y1, y2, 1e-15);
  }
}

TEST_F(SimdEquivalence, DotProductsMatchScalar) {
  std::mt19937_64 rng(2);
  for (std::size_t n : {1u, 2u, 5u, 128u, 999u}) {
    const auto x = random_vector(n, rng);
    const auto y = random_vector(n, rng);
    EXPECT_LE(std::abs(ref.cdotu(n, x.data(), y.data()) - vec.cdotu(n, x.data(), y.data())), 1e-13 * n);
    EXPECT_LE(std::abs(ref.cdotc(n, x.data(), y.data()) - vec.cdotc(n, x.data(), y.data())), 1e-13 * n);
  }
}

TEST_F(SimdEquivalence, LinearCombinationMatchesScalar) {
  std::mt19937_64 rng(3);
  const std::size_t n = 37;
  const auto x = random_vector(n, rng);
  const auto y = random_vector(n, rng);
  std::vector<Complex> o1(n), o2(n);
  ref.clincomb(n, 4.0 / 3.0, x.data(), -1.0 / 3.0, y.data(), o1.data());
  vec.clincomb(n, 4.0 / 3.0, x.data(), -1.0 / 3.0, y.data(), o2.data());
  expect_close(o1, o2, 1e-15);
}

TEST_F(SimdEquivalence, CsrMatvecMatchesScalar) {
  std::mt19937_64 rng(4);
  const std::size_t n = 50;
  std::vector<int> row_ptr{0}, col;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((i * 7 + j * 3) % 5 == 0 || i == j) col.push_back(static_cast<int>(j));
    }
    row_ptr.push_back(static_cast<int>(col.size()));
  }
  const auto val = random_vector(col.size(), rng);
  const auto x = random_vector(n, rng);
  std::vector<Complex> y1(n), y2(n);
  ref.csr_matvec(n, row_ptr.data(), col.data(), val.data(), x.data(), y1.data());
  vec.csr_matvec(n, row_ptr.data(), col.data(), val.data(), x.data(), y2.data());
  expect_close(y1, y2, 1e-13);
}

TEST_F(SimdEquivalence, ScatterSubMatchesScalar) {
  std::mt19937_64 rng(5);
  const std::size_t n = 23;
  std::vector<int> idx(n);
  for (std::size_t p = 0; p < n; ++p) idx[p] = static_cast<int>((p * 11) % 40);
  const auto l = random_vector(n, rng);
  auto y1 = random_vector(40, rng);
  auto y2 = y1;
  ref.scatter_sub(n, idx.data(), l.data(), {0.5, 2.0}, y1.data());
  vec.scatter_sub(n, idx.data(), l.data(), {0.5, 2.0}, y2.data());
  expect_close(y1, y2, 1e-15);
}

TEST_F(SimdEquivalence, P1GeometryMatchesScalarOnJitteredMesh) {
  const Mesh mesh = jitter_interior_nodes(build_square_mesh(9), 0.02, 7);
  const std::size_t nt = mesh.num_triangles();
  std::vector<double> a1(nt), a2(nt), gx1(3 * nt), gx2(3 * nt), gy1(3 * nt), gy2(3 * nt);
  const simd::TriangleBatch batch{mesh.xs().data(), mesh.ys().data(), mesh.flat_triangles().data(), nt};
  ref.p1_geometry(batch, {a1.data(), gx1.data(), gy1.data()});
  vec.p1_geometry(batch, {a2.data(), gx2.data(), gy2.data()});
  for (std::size_t t = 0; t < nt; ++t) EXPECT_NEAR(a1[t], a2[t], 1e-16);
  for (std::size_t i = 0; i < 3 * nt; ++i) {
    EXPECT_NEAR(gx1[i], gx2[i], 1e-12);
    EXPECT_NEAR(gy1[i], gy2[i], 1e-12);
  }
}

#endif

TEST(SimdDispatch, BackendCanBePinnedToScalar) {
  const simd::Backend before = simd::active_backend();
  simd::set_backend(simd::Backend::scalar);
  EXPECT_EQ(simd::active_backend(), simd::Backend::scalar);
  EXPECT_EQ(&simd::kernels(), &simd::scalar_kernels());
  EXPECT_EQ(simd::backend_name(simd::Backend::scalar), "scalar");
  simd::set_backend(before);
}

TEST(SimdDispatch, UnavailableBackendIsRejected) {
  if (simd::avx2_supported()) GTEST_SKIP() << "AVX2 available here";
  EXPECT_THROW(simd::set_backend(simd::Backend::avx2), std::invalid_argument);
}

TEST(SimdKernels, ScalarGeometryOfUnitRightTriangle) {
  const double x[] = {0.0, 1.0, 0.0}, y[] = {0.0, 0.0, 1.0};
  const int tri[] = {0, 1, 2};
  double area = 0, gx[3], gy[3];
  simd::scalar_kernels().p1_geometry({x, y, tri, 1}, {&area, gx, gy});
  EXPECT_DOUBLE_EQ(area, 0.5);
  EXPECT_DOUBLE_EQ(gx[0], -1.0);
  EXPECT_DOUBLE_EQ(gy[0], -1.0);
  EXPECT_DOUBLE_EQ(gx[1], 1.0);
  EXPECT_DOUBLE_EQ(gy[1], 0.0);
  EXPECT_DOUBLE_EQ(gx[2], 0.0);
  EXPECT_DOUBLE_EQ(gy[2], 1.0);
}
