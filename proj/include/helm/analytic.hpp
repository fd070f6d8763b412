#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "helm/types.hpp"

namespace helm {

enum class DomainTag { hexagon, square, lshape };
enum class ProblemKind { bessel_exact, gaussian_source };

std::string to_string(DomainTag d);
std::string to_string(ProblemKind p);
DomainTag parse_domain(const std::string& s);
ProblemKind parse_problem(const std::string& s);

/// Thrown when an exact-solution quantity is requested for a problem
/// without a known solution.
class NoExactSolution : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// J_0 or J_1 at 0 <= x <= 1e4: power series up to 12, Miller backward
/// recurrence up to 30, Hankel asymptotic expansion beyond.
double bessel_j(int order, double x);

namespace detail {
// Individual branches, exposed for the switchover cross-checks.
double bessel_series(int order, double x);
double bessel_miller(int order, double x);
double bessel_asymptotic(int order, double x);
}  // namespace detail

struct ProblemSpec {
  double k = 1.0;
  DomainTag domain = DomainTag::square;
  Point2 center;
  ProblemKind kind = ProblemKind::bessel_exact;
  bool has_exact = true;
  /// c = (cos k + i sin k) / (k (J0(k) + i J1(k))), bessel_exact only.
  Complex c{};

  /// u = cos(kr)/k - c J0(kr) with r measured from the origin.
  static ProblemSpec bessel(double k, DomainTag domain);
  /// f = sin(k r)/r exp(-50 r) with r measured from (0.5, 0.5), g = 0.
  static ProblemSpec gaussian(double k, DomainTag domain);
  static ProblemSpec make(ProblemKind kind, double k, DomainTag domain);
};

struct ExactEval {
  Complex value;
  CVec2 gradient;
};

ExactEval exact_eval(const ProblemSpec& p, Point2 pt);
Complex source_f(const ProblemSpec& p, Point2 pt);
/// du/dn + i k u on the boundary; zero for the gaussian source problem.
Complex robin_g(const ProblemSpec& p, Point2 pt, Point2 normal);

/// -Lap(u) - k^2 u at pt from five-point differences with steps h and h/2,
/// combined by Richardson extrapolation.
Complex helmholtz_residual(const std::function<Complex(Point2)>& u, double k, Point2 pt, double h = 1e-4);

/// max |(-Lap u - k^2 u) - f| over the samples.
double verify_manufactured(const ProblemSpec& p, std::span<const Point2> samples);

/// First n points of the 2D Halton sequence (bases 2 and 3) in [0,1)^2,
/// skipping the origin.
std::vector<Point2> halton_points(std::size_t n);

}  // namespace helm
