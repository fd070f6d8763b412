#include <cmath>
#include <stdexcept>

#include "helm/simd/kernels.hpp"
#include "helm/solve.hpp"

namespace helm {
namespace {

// ILU(0) on the CSR pattern of A. Rows are factored in place; `diag[i]` is
// the position of (i, i).
class Ilu0 {
 public:
  explicit Ilu0(const SparseComplexMatrix& a)
      : n_(a.rows()),
        rp_(a.row_ptr().begin(), a.row_ptr().end()),
        ci_(a.col().begin(), a.col().end()),
        v_(a.values().begin(), a.values().end()),
        diag_(n_, -1) {
    std::vector<int> pos(n_, -1);
    for (std::size_t i = 0; i < n_; ++i) {
      for (int p = rp_[i]; p < rp_[i + 1]; ++p) {
        pos[static_cast<std::size_t>(ci_[static_cast<std::size_t>(p)])] = p;
        if (ci_[static_cast<std::size_t>(p)] == static_cast<int>(i)) diag_[i] = p;
      }
      if (diag_[i] < 0) throw std::runtime_error("ILU(0) needs a stored diagonal");
      for (int p = rp_[i]; p < diag_[i]; ++p) {
        const std::size_t j = static_cast<std::size_t>(ci_[static_cast<std::size_t>(p)]);
        const Complex lij = v_[static_cast<std::size_t>(p)] / v_[static_cast<std::size_t>(diag_[j])];
        v_[static_cast<std::size_t>(p)] = lij;
        for (int q = diag_[j] + 1; q < rp_[j + 1]; ++q) {
          const int target = pos[static_cast<std::size_t>(ci_[static_cast<std::size_t>(q)])];
          if (target >= 0) v_[static_cast<std::size_t>(target)] -= lij * v_[static_cast<std::size_t>(q)];
        }
      }
      for (int p = rp_[i]; p < rp_[i + 1]; ++p) pos[static_cast<std::size_t>(ci_[static_cast<std::size_t>(p)])] = -1;
      if (v_[static_cast<std::size_t>(diag_[i])] == Complex(0.0)) v_[static_cast<std::size_t>(diag_[i])] = 1e-12;
    }
  }

  void apply(std::span<const Complex> r, std::span<Complex> z) const {
    for (std::size_t i = 0; i < n_; ++i) {
      Complex s = r[i];
      for (int p = rp_[i]; p < diag_[i]; ++p) {
        s -= v_[static_cast<std::size_t>(p)] * z[static_cast<std::size_t>(ci_[static_cast<std::size_t>(p)])];
      }
      z[i] = s;
    }
    for (std::size_t i = n_; i-- > 0;) {
      Complex s = z[i];
      for (int p = diag_[i] + 1; p < rp_[i + 1]; ++p) {
        s -= v_[static_cast<std::size_t>(p)] * z[static_cast<std::size_t>(ci_[static_cast<std::size_t>(p)])];
      }
      z[i] = s / v_[static_cast<std::size_t>(diag_[i])];
    }
  }

 private:
  std::size_t n_;
  std::vector<int> rp_, ci_;
  std::vector<Complex> v_;
  std::vector<int> diag_;
};

}  // namespace

std::vector<Complex> gmres(const SparseComplexMatrix& a, std::span<const Complex> b, const Preconditioner& precond,
                           std::vector<Complex> x, double tol, int restart, int cap, int& iterations) {
  const std::size_t n = a.rows();
  const auto& kern = simd::kernels();
  const int m = std::max(1, restart);
  const double bnorm = norm2(b);
  if (x.size() != n) throw std::invalid_argument("GMRES initial guess length mismatch");
  iterations = 0;
  if (bnorm == 0.0) return std::vector<Complex>(n);

  std::vector<std::vector<Complex>> v(static_cast<std::size_t>(m) + 1, std::vector<Complex>(n));
  std::vector<std::vector<Complex>> h(static_cast<std::size_t>(m) + 1, std::vector<Complex>(static_cast<std::size_t>(m)));
  std::vector<Complex> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m)), g(static_cast<std::size_t>(m) + 1);
  std::vector<Complex> w(n), z(n);

  while (iterations < cap) {
    a.multiply(x, w);
    for (std::size_t i = 0; i < n; ++i) v[0][i] = b[i] - w[i];
    double beta = norm2(v[0]);
    if (beta / bnorm <= tol) return x;
    for (Complex& c : v[0]) c /= beta;
    std::fill(g.begin(), g.end(), Complex(0.0));
    g[0] = beta;
    int j = 0;
    for (; j < m && iterations < cap; ++j, ++iterations) {
      const auto uj = static_cast<std::size_t>(j);
      precond(v[uj], z);
      a.multiply(z, w);
      // Modified Gram-Schmidt.
      for (std::size_t i = 0; i <= uj; ++i) {
        h[i][uj] = kern.cdotc(n, v[i].data(), w.data());
        kern.caxpy(n, -h[i][uj], v[i].data(), w.data());
      }
      const double hn = norm2(w);
      h[uj + 1][uj] = hn;
      if (hn > 0.0) {
        for (std::size_t i = 0; i < n; ++i) v[uj + 1][i] = w[i] / hn;
      }
      for (std::size_t i = 0; i < uj; ++i) {
        const Complex t = std::conj(cs[i]) * h[i][uj] + std::conj(sn[i]) * h[i + 1][uj];
        h[i + 1][uj] = -sn[i] * h[i][uj] + cs[i] * h[i + 1][uj];
        h[i][uj] = t;
      }
      const double r = std::hypot(std::abs(h[uj][uj]), hn);
      cs[uj] = r == 0.0 ? Complex(1.0) : h[uj][uj] / r;
      sn[uj] = r == 0.0 ? Complex(0.0) : Complex(hn / r);
      h[uj][uj] = r;
      h[uj + 1][uj] = 0.0;
      g[uj + 1] = -sn[uj] * g[uj];
      g[uj] = std::conj(cs[uj]) * g[uj];
      if (std::abs(g[uj + 1]) / bnorm <= 0.5 * tol) {
        ++j;
        ++iterations;
        break;
      }
    }
    // Back substitution for y, then x += M^{-1} V y.
    std::vector<Complex> y(static_cast<std::size_t>(j));
    for (int i = j - 1; i >= 0; --i) {
      Complex s = g[static_cast<std::size_t>(i)];
      for (int l = i + 1; l < j; ++l) s -= h[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] * y[static_cast<std::size_t>(l)];
      y[static_cast<std::size_t>(i)] = s / h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    std::fill(w.begin(), w.end(), Complex(0.0));
    for (int i = 0; i < j; ++i) kern.caxpy(n, y[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)].data(), w.data());
    precond(w, z);
    kern.caxpy(n, 1.0, z.data(), x.data());
  }
  return x;
}

std::vector<Complex> gmres_ilu0(const SparseComplexMatrix& a, std::span<const Complex> b, double tol, int restart,
                                int& iterations) {
  const Ilu0 ilu(a);
  const int cap = static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(a.rows()))));
  return gmres(
      a, b, [&ilu](std::span<const Complex> r, std::span<Complex> z) { ilu.apply(r, z); }, std::vector<Complex>(a.rows()),
      tol, restart, cap, iterations);
}

}  // namespace helm
