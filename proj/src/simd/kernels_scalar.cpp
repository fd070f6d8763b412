#include "helm/simd/kernels.hpp"

namespace helm::simd {
namespace {

void caxpy(std::size_t n, Complex a, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

Complex cdotu(std::size_t n, const Complex* x, const Complex* y) {
  Complex s{};
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

Complex cdotc(std::size_t n, const Complex* x, const Complex* y) {
  Complex s{};
  for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

void clincomb(std::size_t n, double a, const Complex* x, double b, const Complex* y, Complex* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void csr_matvec(std::size_t n, const int* row_ptr, const int* col, const Complex* val, const Complex* x,
                Complex* y) {
  for (std::size_t i = 0; i < n; ++i) {
    Complex s{};
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += val[p] * x[col[p]];
    y[i] = s;
  }
}

void scatter_sub(std::size_t n, const int* idx, const Complex* l, Complex s, Complex* y) {
  for (std::size_t p = 0; p < n; ++p) y[idx[p]] -= l[p] * s;
}

void p1_geometry(const TriangleBatch& b, const P1GeometryOut& out) {
  for (std::size_t t = 0; t < b.count; ++t) {
    const int* v = b.tri + 3 * t;
    const double x0 = b.x[v[0]], y0 = b.y[v[0]];
    const double x1 = b.x[v[1]], y1 = b.y[v[1]];
    const double x2 = b.x[v[2]], y2 = b.y[v[2]];
    const double det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
    const double inv = 1.0 / det;
    out.area[t] = 0.5 * det;
    // grad lambda_j = rot90(opposite edge) / det
    out.gx[3 * t + 0] = (y1 - y2) * inv;
    out.gy[3 * t + 0] = (x2 - x1) * inv;
    out.gx[3 * t + 1] = (y2 - y0) * inv;
    out.gy[3 * t + 1] = (x0 - x2) * inv;
    out.gx[3 * t + 2] = (y0 - y1) * inv;
    out.gy[3 * t + 2] = (x1 - x0) * inv;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{caxpy, cdotu, cdotc, clincomb, csr_matvec, scatter_sub, p1_geometry};
  return table;
}

}  // namespace helm::simd
