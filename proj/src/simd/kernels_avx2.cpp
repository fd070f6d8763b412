// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// only entered after the runtime CPUID check in dispatch.cpp.
//
// A __m256d holds two std::complex<double> values as [re0, im0, re1, im1].

#include <immintrin.h>

#include "helm/simd/kernels.hpp"

namespace helm::simd {
namespace {

inline const double* as_doubles(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(Complex* p) { return reinterpret_cast<double*>(p); }

// (ar + i ai) * v for two packed complex values
inline __m256d mul_broadcast(__m256d ar, __m256d ai, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

inline __m128d mul_broadcast(__m128d ar, __m128d ai, __m128d v) {
  const __m128d swapped = _mm_permute_pd(v, 0b01);
  return _mm_fmaddsub_pd(ar, v, _mm_mul_pd(ai, swapped));
}

void caxpy(std::size_t n, Complex a, const Complex* x, Complex* y) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, mul_broadcast(ar, ai, xv)));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = Complex(y[i].real() + a.real() * xr - a.imag() * xi, y[i].imag() + a.real() * xi + a.imag() * xr);
  }
}

// Accumulates p = x*y elementwise and q = x*swap(y); the complex result is
// assembled from the lane sums at the end.
template <bool Conjugate>
Complex cdot(std::size_t n, const Complex* x, const Complex* y) {
  const double* xd = as_doubles(x);
  const double* yd = as_doubles(y);
  __m256d p = _mm256_setzero_pd();
  __m256d q = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    p = _mm256_fmadd_pd(xv, yv, p);
    q = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), q);
  }
  alignas(32) double pl[4];
  alignas(32) double ql[4];
  _mm256_store_pd(pl, p);
  _mm256_store_pd(ql, q);
  // p lanes: xr*yr, xi*yi ; q lanes: xr*yi, xi*yr
  double re, im;
  if constexpr (Conjugate) {
    re = (pl[0] + pl[2]) + (pl[1] + pl[3]);
    im = (ql[0] + ql[2]) - (ql[1] + ql[3]);
  } else {
    re = (pl[0] + pl[2]) - (pl[1] + pl[3]);
    im = (ql[0] + ql[2]) + (ql[1] + ql[3]);
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = Conjugate ? -x[i].imag() : x[i].imag();
    re += xr * y[i].real() - xi * y[i].imag();
    im += xr * y[i].imag() + xi * y[i].real();
  }
  return {re, im};
}

Complex cdotu(std::size_t n, const Complex* x, const Complex* y) { return cdot<false>(n, x, y); }
Complex cdotc(std::size_t n, const Complex* x, const Complex* y) { return cdot<true>(n, x, y); }

void clincomb(std::size_t n, double a, const Complex* x, double b, const Complex* y, Complex* out) {
  const __m256d av = _mm256_set1_pd(a);
  const __m256d bv = _mm256_set1_pd(b);
  const double* xd = as_doubles(x);
  const double* yd = as_doubles(y);
  double* od = as_doubles(out);
  const std::size_t m = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d r = _mm256_fmadd_pd(av, _mm256_loadu_pd(xd + i), _mm256_mul_pd(bv, _mm256_loadu_pd(yd + i)));
    _mm256_storeu_pd(od + i, r);
  }
  for (; i < m; ++i) od[i] = a * xd[i] + b * yd[i];
}

void csr_matvec(std::size_t n, const int* row_ptr, const int* col, const Complex* val, const Complex* x,
                Complex* y) {
  const double* vd = as_doubles(val);
  const double* xd = as_doubles(x);
  for (std::size_t i = 0; i < n; ++i) {
    __m256d p = _mm256_setzero_pd();
    __m256d q = _mm256_setzero_pd();
    int k = row_ptr[i];
    const int end = row_ptr[i + 1];
    for (; k + 2 <= end; k += 2) {
      const __m256d v = _mm256_loadu_pd(vd + 2 * k);
      const __m256d xv =
          _mm256_set_m128d(_mm_loadu_pd(xd + 2 * col[k + 1]), _mm_loadu_pd(xd + 2 * col[k]));
      p = _mm256_fmadd_pd(v, xv, p);
      q = _mm256_fmadd_pd(v, _mm256_permute_pd(xv, 0b0101), q);
    }
    alignas(32) double pl[4];
    alignas(32) double ql[4];
    _mm256_store_pd(pl, p);
    _mm256_store_pd(ql, q);
    double re = (pl[0] + pl[2]) - (pl[1] + pl[3]);
    double im = (ql[0] + ql[2]) + (ql[1] + ql[3]);
    for (; k < end; ++k) {
      const Complex v = val[k], xv = x[col[k]];
      re += v.real() * xv.real() - v.imag() * xv.imag();
      im += v.real() * xv.imag() + v.imag() * xv.real();
    }
    y[i] = Complex(re, im);
  }
}

void scatter_sub(std::size_t n, const int* idx, const Complex* l, Complex s, Complex* y) {
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  const double* ld = as_doubles(l);
  double* yd = as_doubles(y);
  std::size_t p = 0;
  for (; p + 2 <= n; p += 2) {
    const __m256d prod = mul_broadcast(sr, si, _mm256_loadu_pd(ld + 2 * p));
    double* y0 = yd + 2 * idx[p];
    double* y1 = yd + 2 * idx[p + 1];
    _mm_storeu_pd(y0, _mm_sub_pd(_mm_loadu_pd(y0), _mm256_castpd256_pd128(prod)));
    _mm_storeu_pd(y1, _mm_sub_pd(_mm_loadu_pd(y1), _mm256_extractf128_pd(prod, 1)));
  }
  if (p < n) {
    const __m128d prod = mul_broadcast(_mm_set1_pd(s.real()), _mm_set1_pd(s.imag()), _mm_loadu_pd(ld + 2 * p));
    double* y0 = yd + 2 * idx[p];
    _mm_storeu_pd(y0, _mm_sub_pd(_mm_loadu_pd(y0), prod));
  }
}

void p1_geometry(const TriangleBatch& b, const P1GeometryOut& out) {
  const __m128i stride = _mm_setr_epi32(0, 3, 6, 9);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t t = 0;
  for (; t + 4 <= b.count; t += 4) {
    const int* base = b.tri + 3 * t;
    const __m128i i0 = _mm_i32gather_epi32(base, stride, 4);
    const __m128i i1 = _mm_i32gather_epi32(base + 1, stride, 4);
    const __m128i i2 = _mm_i32gather_epi32(base + 2, stride, 4);
    const __m256d x0 = _mm256_i32gather_pd(b.x, i0, 8), y0 = _mm256_i32gather_pd(b.y, i0, 8);
    const __m256d x1 = _mm256_i32gather_pd(b.x, i1, 8), y1 = _mm256_i32gather_pd(b.y, i1, 8);
    const __m256d x2 = _mm256_i32gather_pd(b.x, i2, 8), y2 = _mm256_i32gather_pd(b.y, i2, 8);
    const __m256d det = _mm256_sub_pd(_mm256_mul_pd(_mm256_sub_pd(x1, x0), _mm256_sub_pd(y2, y0)),
                                      _mm256_mul_pd(_mm256_sub_pd(x2, x0), _mm256_sub_pd(y1, y0)));
    const __m256d inv = _mm256_div_pd(one, det);
    _mm256_storeu_pd(out.area + t, _mm256_mul_pd(half, det));

    alignas(32) double g[6][4];
    _mm256_store_pd(g[0], _mm256_mul_pd(_mm256_sub_pd(y1, y2), inv));
    _mm256_store_pd(g[1], _mm256_mul_pd(_mm256_sub_pd(x2, x1), inv));
    _mm256_store_pd(g[2], _mm256_mul_pd(_mm256_sub_pd(y2, y0), inv));
    _mm256_store_pd(g[3], _mm256_mul_pd(_mm256_sub_pd(x0, x2), inv));
    _mm256_store_pd(g[4], _mm256_mul_pd(_mm256_sub_pd(y0, y1), inv));
    _mm256_store_pd(g[5], _mm256_mul_pd(_mm256_sub_pd(x1, x0), inv));
    for (int l = 0; l < 4; ++l) {
      for (int j = 0; j < 3; ++j) {
        out.gx[3 * (t + l) + j] = g[2 * j][l];
        out.gy[3 * (t + l) + j] = g[2 * j + 1][l];
      }
    }
  }
  if (t < b.count) {
    const TriangleBatch rest{b.x, b.y, b.tri + 3 * t, b.count - t};
    const P1GeometryOut rest_out{out.area + t, out.gx + 3 * t, out.gy + 3 * t};
    scalar_kernels().p1_geometry(rest, rest_out);
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{caxpy, cdotu, cdotc, clincomb, csr_matvec, scatter_sub, p1_geometry};
  return table;
}

}  // namespace helm::simd
