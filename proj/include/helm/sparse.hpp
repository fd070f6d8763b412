#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "helm/types.hpp"

namespace helm {

/// Square complex matrix in compressed row storage with sorted, unique
/// column indices per row.
class SparseComplexMatrix {
 public:
  SparseComplexMatrix() = default;
  SparseComplexMatrix(std::size_t n, std::vector<int> row_ptr, std::vector<int> col, std::vector<Complex> val,
                      bool symmetric);

  std::size_t rows() const { return n_; }
  std::size_t nonzeros() const { return val_.size(); }
  std::span<const int> row_ptr() const { return row_ptr_; }
  std::span<const int> col() const { return col_; }
  std::span<const Complex> values() const { return val_; }
  /// Set by the builder when the caller declared the matrix symmetric.
  bool symmetric() const { return symmetric_; }

  /// y = A x through the active SIMD backend.
  void multiply(std::span<const Complex> x, std::span<Complex> y) const;
  std::vector<Complex> multiply(std::span<const Complex> x) const;

  Complex coeff(int i, int j) const;
  double max_abs() const;
  /// A(i, j) == A(j, i) bitwise with identical sparsity.
  bool is_symmetric_exact() const;

 private:
  std::size_t n_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_;
  std::vector<Complex> val_;
  bool symmetric_ = false;
};

/// Accumulates (i, j, v) triplets. Duplicates are summed in insertion order,
/// so symmetric element contributions added in the same order produce a
/// bitwise symmetric matrix.
class SparseBuilder {
 public:
  explicit SparseBuilder(std::size_t n) : n_(n) {}
  void reserve(std::size_t count) { entries_.reserve(count); }
  void add(int i, int j, Complex v);
  SparseComplexMatrix build(bool symmetric) const;

 private:
  struct Entry {
    int i, j;
    Complex v;
  };
  std::size_t n_;
  std::vector<Entry> entries_;
};

SparseComplexMatrix operator+(const SparseComplexMatrix& a, const SparseComplexMatrix& b);
SparseComplexMatrix scaled(const SparseComplexMatrix& a, Complex s);

/// Matrix Market coordinate complex general, 1-based indices.
void write_matrix_market(std::ostream& out, const SparseComplexMatrix& a);

double norm2(std::span<const Complex> v);

}  // namespace helm
