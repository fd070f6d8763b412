#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "helm/sparse.hpp"

namespace helm {

enum class SolverKind { direct, iterative };

SolverKind parse_solver(const std::string& s);
std::string to_string(SolverKind s);

struct SolveOptions {
  SolverKind kind = SolverKind::direct;
  double tol = 1e-10;
  /// GMRES restart length.
  int restart = 60;
};

struct SolveReport {
  /// ||A x - b|| / ||b||, recomputed with the shared matrix-vector product.
  double relative_residual = 0.0;
  /// Stored entries of L (direct path).
  std::size_t factor_nonzeros = 0;
  /// Refinement steps (direct) or Krylov iterations (iterative).
  int iterations = 0;
  /// Pivots replaced by the perturbation (direct path).
  int perturbed_pivots = 0;
  /// Set when refinement missed the target after perturbed pivots and the
  /// system was re-solved with a partially pivoted sparse LU.
  bool pivoted_lu = false;
  double wall_time = 0.0;
  SolverKind kind = SolverKind::direct;
};

class SolveError : public std::runtime_error {
 public:
  enum class Kind { singular, no_convergence };
  SolveError(Kind kind, const std::string& what, SolveReport report)
      : std::runtime_error(what), kind_(kind), report_(report) {}
  Kind kind() const { return kind_; }
  const SolveReport& report() const { return report_; }

 private:
  Kind kind_;
  SolveReport report_;
};

/// Complex symmetric (A = A^T, no conjugation) LDL^T factorization with a
/// minimum-degree ordering. Pivots smaller than 1e-14 max|A| are replaced by
/// sqrt(eps) max|A|; `solve` corrects for them with iterative refinement
/// and falls back to a pivoted LU when that is not enough.
class SymmetricLdlt {
 public:
  explicit SymmetricLdlt(const SparseComplexMatrix& a);

  std::size_t size() const { return n_; }
  std::size_t factor_nonzeros() const { return li_.size(); }
  int perturbed_pivots() const { return perturbed_; }
  /// One application of (P^T L D L^T P)^{-1}.
  void apply_inverse(std::span<const Complex> b, std::span<Complex> x) const;

 private:
  std::size_t n_ = 0;
  std::vector<int> perm_, inv_perm_;
  std::vector<int> lp_, li_;
  std::vector<Complex> lx_, d_;
  int perturbed_ = 0;
};

/// z = M^{-1} r.
using Preconditioner = std::function<void(std::span<const Complex>, std::span<Complex>)>;

/// Restarted right-preconditioned GMRES from the initial guess x, stopping
/// at ||b - A x|| <= tol ||b|| or after `cap` iterations in total.
std::vector<Complex> gmres(const SparseComplexMatrix& a, std::span<const Complex> b, const Preconditioner& precond,
                           std::vector<Complex> x, double tol, int restart, int cap, int& iterations);

/// Restarted right-preconditioned GMRES with an ILU(0) preconditioner.
/// The total iteration cap is 10 sqrt(n).
std::vector<Complex> gmres_ilu0(const SparseComplexMatrix& a, std::span<const Complex> b, double tol, int restart,
                                int& iterations);

/// Solves A x = b. Throws SolveError when the residual target is missed.
std::vector<Complex> solve(const SparseComplexMatrix& a, std::span<const Complex> b, const SolveOptions& opts,
                           SolveReport* report = nullptr);

double relative_residual(const SparseComplexMatrix& a, std::span<const Complex> x, std::span<const Complex> b);

}  // namespace helm
