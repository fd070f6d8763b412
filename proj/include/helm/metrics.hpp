#pragma once

#include <optional>
#include <span>
#include <vector>

#include "helm/analytic.hpp"
#include "helm/assembly.hpp"
#include "helm/fields.hpp"
#include "helm/quadrature.hpp"
#include "helm/solve.hpp"

namespace helm {

/// Norms of the exact solution: ||u||_0, |u|_1 and the energy norm
/// (|u|_1^2 + k^2 ||u||_0^2)^(1/2).
struct ReferenceNorms {
  double l2 = 0.0;
  double h1 = 0.0;
  double energy = 0.0;
};

/// Degree-8 quadrature on a fine structured mesh of the problem's domain,
/// computed once per (k, domain) and cached.
ReferenceNorms reference_norms(const ProblemSpec& p);

struct ErrorBundle {
  double l2_err = 0.0;
  double h1_semi_err = 0.0;
  double energy_err = 0.0;
  double rel_l2 = 0.0;
  double rel_h1 = 0.0;
  double rel_energy = 0.0;
  ReferenceNorms reference;
};

/// Errors of the P1 function `values` against the exact solution.
ErrorBundle error_bundle(const Mesh& mesh, std::span<const Complex> values, const ProblemSpec& p,
                         const QuadratureRule& quad);

/// Piecewise-constant gradient of a P1 field, one entry per triangle.
std::vector<CVec2> element_gradients(const Mesh& mesh, const P1Geometry& geo, std::span<const Complex> values);

/// ||g - grad u||_0 for a P1 vector field g.
double grad_error_l2(const Mesh& mesh, std::span<const CVec2> g, const ProblemSpec& p, const QuadratureRule& quad);

/// ||g - grad u||_0 for a field constant on each triangle.
double piecewise_grad_error_l2(const Mesh& mesh, std::span<const CVec2> per_triangle, const ProblemSpec& p,
                               const QuadratureRule& quad);

/// ||g - grad u_h||_0 for a P1 vector field g, integrated exactly.
double grad_diff_l2(const Mesh& mesh, std::span<const CVec2> g, std::span<const Complex> solution);

/// log2(err[i-1] / err[i]) for the last pair. Throws unless every h halves.
double fit_order(std::span<const double> h, std::span<const double> err);

/// Least-squares slope of log(err) against log(h).
double fit_order_ls(std::span<const double> h, std::span<const double> err);

enum class CriticalQuantity { fem_grad, recovered_grad };

struct CriticalOptions {
  /// 0 picks ceil(k / 2) + 1.
  int m_start = 0;
  int m_max = 768;
  int max_solves = 12;
  SolveOptions solver;
};

struct CriticalResult {
  double k = 0.0;
  double eps = 0.0;
  bool reached = false;
  /// Smallest tested m meeting the tolerance and h = 1/m.
  int m = 0;
  double h = 0.0;
  int solves = 0;
  /// Every (m, relative error) evaluated, in order.
  std::vector<std::pair<int, double>> evaluations;
};

/// Largest h = 1/m on the hexagon family with relative gradient error
/// <= eps: geometric doubling of m, then integer bisection, at most
/// `max_solves` solves. `reached` is false when m_max still misses eps.
CriticalResult critical_mesh_size(double k, double eps, CriticalQuantity quantity, const CriticalOptions& opts = {});

}  // namespace helm
