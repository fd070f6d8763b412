#pragma once

// Data-parallel inner loops shared by assembly, the sparse solver, and the
// Krylov fallback. Every kernel has a scalar reference implementation and,
// on x86-64, an AVX2/FMA variant. The active backend is picked once at
// startup from CPUID and can be pinned with HELM_SIMD=scalar|avx2.

#include <cstddef>
#include <string_view>

#include "helm/types.hpp"

namespace helm::simd {

enum class Backend { scalar, avx2 };

/// Structure-of-arrays view of a batch of triangles. Vertex coordinates
/// are read as x[v], y[v] for v = tri[3 * t + j].
struct TriangleBatch {
  const double* x = nullptr;
  const double* y = nullptr;
  const int* tri = nullptr;
  std::size_t count = 0;
};

/// Output of p1_geometry: signed area and the constant gradients of the
/// three barycentric basis functions of each triangle.
struct P1GeometryOut {
  double* area = nullptr;
  double* gx = nullptr;  // 3 * count, gx[3 * t + j]
  double* gy = nullptr;
};

struct KernelTable {
  // y += a * x
  void (*caxpy)(std::size_t n, Complex a, const Complex* x, Complex* y);
  // sum x_i * y_i (no conjugation)
  Complex (*cdotu)(std::size_t n, const Complex* x, const Complex* y);
  // sum conj(x_i) * y_i
  Complex (*cdotc)(std::size_t n, const Complex* x, const Complex* y);
  // out = a * x + b * y, real a, b
  void (*clincomb)(std::size_t n, double a, const Complex* x, double b, const Complex* y, Complex* out);
  // y = A x for CSR A with n rows
  void (*csr_matvec)(std::size_t n, const int* row_ptr, const int* col, const Complex* val, const Complex* x,
                     Complex* y);
  // y[idx[p]] -= l[p] * s for p in [0, n)
  void (*scatter_sub)(std::size_t n, const int* idx, const Complex* l, Complex s, Complex* y);
  void (*p1_geometry)(const TriangleBatch& batch, const P1GeometryOut& out);
};

const KernelTable& scalar_kernels();
#if defined(HELM_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

bool avx2_supported();
Backend active_backend();
/// Throws std::invalid_argument when the requested backend is unavailable.
void set_backend(Backend backend);
std::string_view backend_name(Backend backend);

/// The table for the active backend.
const KernelTable& kernels();

}  // namespace helm::simd
