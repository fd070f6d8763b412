#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "helm/metrics.hpp"
#include "helm/recovery.hpp"

namespace helm {
namespace {

double relative_error(const ProblemSpec& p, int m, CriticalQuantity quantity, const SolveOptions& solver) {
  auto mesh = std::make_shared<const Mesh>(build_hexagon_mesh(m));
  const LinearSystem sys = assemble_helmholtz(*mesh, p);
  const std::vector<Complex> uh = solve(sys.A, sys.b, solver);
  const QuadratureRule quad = quadrature_rule(QuadKind::triangle, 6);
  if (quantity == CriticalQuantity::fem_grad) return error_bundle(*mesh, uh, p, quad).rel_h1;
  const GradientRecovery recovery(mesh);
  return grad_error_l2(*mesh, recovery.apply(uh), p, quad) / reference_norms(p).h1;
}

}  // namespace

CriticalResult critical_mesh_size(double k, double eps, CriticalQuantity quantity, const CriticalOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const ProblemSpec p = ProblemSpec::bessel(k, DomainTag::hexagon);
  CriticalResult out;
  out.k = k;
  out.eps = eps;
  auto evaluate = [&](int m) {
    // A failed solve counts as missing the tolerance.
    double e = std::numeric_limits<double>::infinity();
    try {
      e = relative_error(p, m, quantity, opts.solver);
    } catch (const SolveError&) {
    }
    ++out.solves;
    out.evaluations.emplace_back(m, e);
    return e;
  };

  int m = opts.m_start > 0 ? opts.m_start : static_cast<int>(std::ceil(k / 2.0)) + 1;
  int lo = 0, hi = 0;
  while (out.solves < opts.max_solves) {
    if (evaluate(m) <= eps) {
      hi = m;
      break;
    }
    lo = m;
    if (m >= opts.m_max) break;
    m = std::min(2 * m, opts.m_max);
  }
  if (hi == 0) return out;
  while (hi - lo > 1 && out.solves < opts.max_solves) {
    const int mid = lo + (hi - lo) / 2;
    if (evaluate(mid) <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.reached = true;
  out.m = hi;
  out.h = 1.0 / hi;
  return out;
}

}  // namespace helm
