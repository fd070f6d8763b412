#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>
#include <algorithm>
#include <chrono>

#include "helm/solve.hpp"

namespace helm {
namespace {

std::vector<Complex> pivoted_lu_solve(const SparseComplexMatrix& a, std::span<const Complex> b) {
  const auto n = static_cast<Eigen::Index>(a.rows());
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(a.nonzeros());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int p = a.row_ptr()[static_cast<std::size_t>(i)]; p < a.row_ptr()[static_cast<std::size_t>(i) + 1]; ++p) {
      entries.emplace_back(i, a.col()[static_cast<std::size_t>(p)], a.values()[static_cast<std::size_t>(p)]);
    }
  }
  Eigen::SparseMatrix<Complex> m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(m);
  std::vector<Complex> x(a.rows());
  if (lu.info() != Eigen::Success) return x;
  const Eigen::VectorXcd sol = lu.solve(Eigen::Map<const Eigen::VectorXcd>(b.data(), n));
  std::copy(sol.begin(), sol.end(), x.begin());
  return x;
}

}  // namespace

SolverKind parse_solver(const std::string& s) {
  if (s == "direct") return SolverKind::direct;
  if (s == "iterative") return SolverKind::iterative;
  throw std::invalid_argument("unknown solver '" + s + "'");
}

std::string to_string(SolverKind s) { return s == SolverKind::direct ? "direct" : "iterative"; }

double relative_residual(const SparseComplexMatrix& a, std::span<const Complex> x, std::span<const Complex> b) {
  std::vector<Complex> r = a.multiply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  const double bn = norm2(b);
  return bn == 0.0 ? norm2(r) : norm2(r) / bn;
}

std::vector<Complex> solve(const SparseComplexMatrix& a, std::span<const Complex> b, const SolveOptions& opts,
                           SolveReport* report) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length differs from matrix size");
  if (!(opts.tol >= 1e-14)) throw std::invalid_argument("solve tolerance must be >= 1e-14");
  const auto start = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.kind = opts.kind;
  std::vector<Complex> x(a.rows());

  if (opts.kind == SolverKind::direct) {
    const SymmetricLdlt ldlt(a);
    rep.factor_nonzeros = ldlt.factor_nonzeros();
    rep.perturbed_pivots = ldlt.perturbed_pivots();
    ldlt.apply_inverse(b, x);
    rep.relative_residual = relative_residual(a, x, b);
    std::vector<Complex> r(a.rows()), dx(a.rows());
    while (rep.relative_residual > opts.tol && rep.iterations < 3) {
      a.multiply(x, r);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
      ldlt.apply_inverse(r, dx);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
      ++rep.iterations;
      rep.relative_residual = relative_residual(a, x, b);
    }
    if (rep.relative_residual > opts.tol && rep.perturbed_pivots > 0) {
      // Exact zero pivots without pivoting can make the perturbed factors
      // useless; a pivoted LU of the same matrix settles it.
      x = pivoted_lu_solve(a, b);
      rep.pivoted_lu = true;
      rep.relative_residual = relative_residual(a, x, b);
    }
  } else {
    x = gmres_ilu0(a, b, opts.tol, opts.restart, rep.iterations);
    rep.relative_residual = relative_residual(a, x, b);
  }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (report) *report = rep;
  if (!(rep.relative_residual <= opts.tol)) {
    if (opts.kind == SolverKind::direct && rep.perturbed_pivots > 0) {
      throw SolveError(SolveError::Kind::singular, "singular system: pivot below 1e-14 max|A|", rep);
    }
    throw SolveError(SolveError::Kind::no_convergence, "solver missed the residual target", rep);
  }
  return x;
}

}  // namespace helm
