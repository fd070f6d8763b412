#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "helm/simd/kernels.hpp"
#include "helm/sparse.hpp"

namespace helm {

SparseComplexMatrix::SparseComplexMatrix(std::size_t n, std::vector<int> row_ptr, std::vector<int> col,
                                         std::vector<Complex> val, bool symmetric)
    : n_(n), row_ptr_(std::move(row_ptr)), col_(std::move(col)), val_(std::move(val)), symmetric_(symmetric) {
  if (row_ptr_.size() != n_ + 1 || col_.size() != val_.size() ||
      static_cast<std::size_t>(row_ptr_.back()) != col_.size()) {
    throw std::invalid_argument("inconsistent CSR arrays");
  }
}

void SparseComplexMatrix::multiply(std::span<const Complex> x, std::span<Complex> y) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("matrix-vector size mismatch");
  simd::kernels().csr_matvec(n_, row_ptr_.data(), col_.data(), val_.data(), x.data(), y.data());
}

std::vector<Complex> SparseComplexMatrix::multiply(std::span<const Complex> x) const {
  std::vector<Complex> y(n_);
  multiply(x, y);
  return y;
}

Complex SparseComplexMatrix::coeff(int i, int j) const {
  const auto first = col_.begin() + row_ptr_[static_cast<std::size_t>(i)];
  const auto last = col_.begin() + row_ptr_[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return val_[static_cast<std::size_t>(it - col_.begin())];
}

double SparseComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& v : val_) m = std::max(m, std::abs(v));
  return m;
}

bool SparseComplexMatrix::is_symmetric_exact() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      const int j = col_[static_cast<std::size_t>(p)];
      const auto first = col_.begin() + row_ptr_[static_cast<std::size_t>(j)];
      const auto last = col_.begin() + row_ptr_[static_cast<std::size_t>(j) + 1];
      const auto it = std::lower_bound(first, last, static_cast<int>(i));
      if (it == last || *it != static_cast<int>(i)) return false;
      const Complex a = val_[static_cast<std::size_t>(p)];
      const Complex b = val_[static_cast<std::size_t>(it - col_.begin())];
      if (a.real() != b.real() || a.imag() != b.imag()) return false;
    }
  }
  return true;
}

void SparseBuilder::add(int i, int j, Complex v) {
  if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= n_ || static_cast<std::size_t>(j) >= n_) {
    throw std::out_of_range("matrix entry out of range");
  }
  entries_.push_back({i, j, v});
}

SparseComplexMatrix SparseBuilder::build(bool symmetric) const {
  // Stable bucket by row keeps insertion order, then a stable sort by column
  // inside each row keeps it among duplicates.
  std::vector<int> count(n_ + 1, 0);
  for (const Entry& e : entries_) ++count[static_cast<std::size_t>(e.i) + 1];
  for (std::size_t i = 0; i < n_; ++i) count[i + 1] += count[i];
  std::vector<std::pair<int, Complex>> by_row(entries_.size());
  std::vector<int> fill(count.begin(), count.end() - 1);
  for (const Entry& e : entries_) by_row[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.i)]++)] = {e.j, e.v};

  std::vector<int> row_ptr(n_ + 1, 0), col;
  std::vector<Complex> val;
  col.reserve(entries_.size() / 2);
  val.reserve(entries_.size() / 2);
  for (std::size_t i = 0; i < n_; ++i) {
    auto first = by_row.begin() + count[i], last = by_row.begin() + count[i + 1];
    std::stable_sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last; ++it) {
      if (!col.empty() && static_cast<int>(col.size()) > row_ptr[i] && col.back() == it->first) {
        val.back() += it->second;
      } else {
        col.push_back(it->first);
        val.push_back(it->second);
      }
    }
    row_ptr[i + 1] = static_cast<int>(col.size());
  }
  return SparseComplexMatrix(n_, std::move(row_ptr), std::move(col), std::move(val), symmetric);
}

SparseComplexMatrix operator+(const SparseComplexMatrix& a, const SparseComplexMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("matrix sizes differ");
  SparseBuilder builder(a.rows());
  builder.reserve(a.nonzeros() + b.nonzeros());
  for (const SparseComplexMatrix* m : {&a, &b}) {
    for (std::size_t i = 0; i < m->rows(); ++i) {
      for (int p = m->row_ptr()[i]; p < m->row_ptr()[i + 1]; ++p) {
        builder.add(static_cast<int>(i), m->col()[static_cast<std::size_t>(p)], m->values()[static_cast<std::size_t>(p)]);
      }
    }
  }
  return builder.build(a.symmetric() && b.symmetric());
}

SparseComplexMatrix scaled(const SparseComplexMatrix& a, Complex s) {
  std::vector<Complex> val(a.values().begin(), a.values().end());
  for (Complex& v : val) v *= s;
  return SparseComplexMatrix(a.rows(), {a.row_ptr().begin(), a.row_ptr().end()}, {a.col().begin(), a.col().end()},
                             std::move(val), a.symmetric());
}

void write_matrix_market(std::ostream& out, const SparseComplexMatrix& a) {
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << a.rows() << ' ' << a.rows() << ' ' << a.nonzeros() << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (int p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) {
      const Complex v = a.values()[static_cast<std::size_t>(p)];
      out << i + 1 << ' ' << a.col()[static_cast<std::size_t>(p)] + 1 << ' ' << v.real() << ' ' << v.imag() << '\n';
    }
  }
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace helm
