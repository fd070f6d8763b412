#include <amd.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "helm/simd/kernels.hpp"
#include "helm/solve.hpp"

namespace helm {
namespace {

// Fill-reducing order of the symmetric pattern of A.
std::vector<int> amd_permutation(const SparseComplexMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  double control[AMD_CONTROL], info[AMD_INFO];
  amd_defaults(control);
  const int status = amd_order(n, a.row_ptr().data(), a.col().data(), perm.data(), control, info);
  if (status != AMD_OK && status != AMD_OK_BUT_JUMBLED) throw std::runtime_error("AMD ordering failed");
  return perm;
}

}  // namespace

SymmetricLdlt::SymmetricLdlt(const SparseComplexMatrix& a) : n_(a.rows()) {
  const int n = static_cast<int>(n_);
  if (n == 0) return;
  perm_ = amd_permutation(a);
  inv_perm_.resize(n_);
  for (int k = 0; k < n; ++k) inv_perm_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(k)])] = k;

  const auto ap = a.row_ptr();
  const auto ai = a.col();
  const auto ax = a.values();

  // Symbolic: elimination tree and column counts of L. The pattern is
  // symmetric, so row kk of the CSR arrays doubles as column kk.
  std::vector<int> parent(n_, -1), flag(n_), lnz(n_, 0);
  for (int k = 0; k < n; ++k) {
    flag[static_cast<std::size_t>(k)] = k;
    const int kk = perm_[static_cast<std::size_t>(k)];
    for (int p = ap[static_cast<std::size_t>(kk)]; p < ap[static_cast<std::size_t>(kk) + 1]; ++p) {
      int i = inv_perm_[static_cast<std::size_t>(ai[static_cast<std::size_t>(p)])];
      if (i >= k) continue;
      for (; flag[static_cast<std::size_t>(i)] != k; i = parent[static_cast<std::size_t>(i)]) {
        if (parent[static_cast<std::size_t>(i)] == -1) parent[static_cast<std::size_t>(i)] = k;
        ++lnz[static_cast<std::size_t>(i)];
        flag[static_cast<std::size_t>(i)] = k;
      }
    }
  }
  lp_.assign(n_ + 1, 0);
  for (std::size_t k = 0; k < n_; ++k) lp_[k + 1] = lp_[k] + lnz[k];
  li_.resize(static_cast<std::size_t>(lp_[n_]));
  lx_.resize(li_.size());
  d_.resize(n_);

  // Numeric, up-looking: row k of L from a sparse triangular solve.
  const double amax = a.max_abs();
  const double tiny = 1e-14 * amax;
  const double replacement = std::sqrt(std::numeric_limits<double>::epsilon()) * amax;
  const auto& kern = simd::kernels();
  std::vector<Complex> y(n_);
  std::vector<int> pattern(n_);
  std::fill(lnz.begin(), lnz.end(), 0);
  for (int k = 0; k < n; ++k) {
    int top = n;
    flag[static_cast<std::size_t>(k)] = k;
    const int kk = perm_[static_cast<std::size_t>(k)];
    for (int p = ap[static_cast<std::size_t>(kk)]; p < ap[static_cast<std::size_t>(kk) + 1]; ++p) {
      int i = inv_perm_[static_cast<std::size_t>(ai[static_cast<std::size_t>(p)])];
      if (i > k) continue;
      y[static_cast<std::size_t>(i)] += ax[static_cast<std::size_t>(p)];
      int len = 0;
      for (; flag[static_cast<std::size_t>(i)] != k; i = parent[static_cast<std::size_t>(i)]) {
        pattern[static_cast<std::size_t>(len++)] = i;
        flag[static_cast<std::size_t>(i)] = k;
      }
      while (len > 0) pattern[static_cast<std::size_t>(--top)] = pattern[static_cast<std::size_t>(--len)];
    }
    Complex dk = y[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(k)] = 0.0;
    for (; top < n; ++top) {
      const int i = pattern[static_cast<std::size_t>(top)];
      const Complex yi = y[static_cast<std::size_t>(i)];
      y[static_cast<std::size_t>(i)] = 0.0;
      const int p0 = lp_[static_cast<std::size_t>(i)];
      const int p2 = p0 + lnz[static_cast<std::size_t>(i)];
      kern.scatter_sub(static_cast<std::size_t>(p2 - p0), li_.data() + p0, lx_.data() + p0, yi, y.data());
      const Complex lki = yi / d_[static_cast<std::size_t>(i)];
      dk -= lki * yi;
      li_[static_cast<std::size_t>(p2)] = k;
      lx_[static_cast<std::size_t>(p2)] = lki;
      ++lnz[static_cast<std::size_t>(i)];
    }
    if (!(std::abs(dk) >= tiny)) {
      dk = replacement;
      ++perturbed_;
    }
    d_[static_cast<std::size_t>(k)] = dk;
  }
}

void SymmetricLdlt::apply_inverse(std::span<const Complex> b, std::span<Complex> x) const {
  if (b.size() != n_ || x.size() != n_) throw std::invalid_argument("LDL^T solve size mismatch");
  const auto& kern = simd::kernels();
  std::vector<Complex> y(n_);
  for (std::size_t k = 0; k < n_; ++k) y[k] = b[static_cast<std::size_t>(perm_[k])];
  for (std::size_t j = 0; j < n_; ++j) {
    const int p0 = lp_[j];
    kern.scatter_sub(static_cast<std::size_t>(lp_[j + 1] - p0), li_.data() + p0, lx_.data() + p0, y[j], y.data());
  }
  for (std::size_t j = 0; j < n_; ++j) y[j] /= d_[j];
  for (std::size_t j = n_; j-- > 0;) {
    Complex s = y[j];
    for (int p = lp_[j]; p < lp_[j + 1]; ++p) {
      s -= lx_[static_cast<std::size_t>(p)] * y[static_cast<std::size_t>(li_[static_cast<std::size_t>(p)])];
    }
    y[j] = s;
  }
  for (std::size_t k = 0; k < n_; ++k) x[static_cast<std::size_t>(perm_[k])] = y[k];
}

}  // namespace helm
