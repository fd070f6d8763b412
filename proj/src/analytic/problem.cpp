#include <cmath>
#include <stdexcept>

#include "helm/analytic.hpp"

namespace helm {

std::string to_string(DomainTag d) {
  switch (d) {
    case DomainTag::hexagon:
      return "hexagon";
    case DomainTag::square:
      return "square";
    case DomainTag::lshape:
      return "lshape";
  }
  return "?";
}

std::string to_string(ProblemKind p) { return p == ProblemKind::bessel_exact ? "bessel" : "gaussian"; }

DomainTag parse_domain(const std::string& s) {
  if (s == "hexagon") return DomainTag::hexagon;
  if (s == "square") return DomainTag::square;
  if (s == "lshape") return DomainTag::lshape;
  throw std::invalid_argument("unknown domain '" + s + "'");
}

ProblemKind parse_problem(const std::string& s) {
  if (s == "bessel") return ProblemKind::bessel_exact;
  if (s == "gaussian") return ProblemKind::gaussian_source;
  throw std::invalid_argument("unknown problem '" + s + "'");
}

ProblemSpec ProblemSpec::bessel(double k, DomainTag domain) {
  if (!(k >= 1.0)) throw std::invalid_argument("wave number must be >= 1");
  ProblemSpec p;
  p.k = k;
  p.domain = domain;
  p.center = {0.0, 0.0};
  p.kind = ProblemKind::bessel_exact;
  p.has_exact = true;
  const Complex num(std::cos(k), std::sin(k));
  const Complex den = k * Complex(bessel_j(0, k), bessel_j(1, k));
  p.c = num / den;
  return p;
}

ProblemSpec ProblemSpec::gaussian(double k, DomainTag domain) {
  if (!(k >= 1.0)) throw std::invalid_argument("wave number must be >= 1");
  ProblemSpec p;
  p.k = k;
  p.domain = domain;
  p.center = {0.5, 0.5};
  p.kind = ProblemKind::gaussian_source;
  p.has_exact = false;
  return p;
}

ProblemSpec ProblemSpec::make(ProblemKind kind, double k, DomainTag domain) {
  return kind == ProblemKind::bessel_exact ? bessel(k, domain) : gaussian(k, domain);
}

ExactEval exact_eval(const ProblemSpec& p, Point2 pt) {
  if (!p.has_exact) throw NoExactSolution("problem has no exact solution");
  const double k = p.k;
  const Point2 d = pt - p.center;
  const double r = norm(d);
  if (r < 1e-10) return {1.0 / k - p.c, {}};
  const double kr = k * r;
  const Complex value = std::cos(kr) / k - p.c * bessel_j(0, kr);
  const Complex du = -std::sin(kr) + p.c * k * bessel_j(1, kr);
  return {value, {du * (d.x / r), du * (d.y / r)}};
}

Complex source_f(const ProblemSpec& p, Point2 pt) {
  const double r = distance(pt, p.center);
  const double kr = p.k * r;
  // sin(kr)/r, with its Taylor expansion near the center.
  const double base = kr < 1e-4 ? p.k * (1.0 - kr * kr / 6.0) : std::sin(kr) / r;
  if (p.kind == ProblemKind::gaussian_source) return base * std::exp(-50.0 * r);
  return base;
}

Complex robin_g(const ProblemSpec& p, Point2 pt, Point2 normal) {
  if (p.kind == ProblemKind::gaussian_source) return 0.0;
  const ExactEval e = exact_eval(p, pt);
  return dot(e.gradient, normal) + Complex(0.0, p.k) * e.value;
}

Complex helmholtz_residual(const std::function<Complex(Point2)>& u, double k, Point2 pt, double h) {
  auto laplacian = [&](double s) {
    return (u({pt.x + s, pt.y}) + u({pt.x - s, pt.y}) + u({pt.x, pt.y + s}) + u({pt.x, pt.y - s}) - 4.0 * u(pt)) /
           (s * s);
  };
  const Complex lap = (4.0 * laplacian(0.5 * h) - laplacian(h)) / 3.0;
  return -lap - k * k * u(pt);
}

double verify_manufactured(const ProblemSpec& p, std::span<const Point2> samples) {
  if (!p.has_exact) throw NoExactSolution("problem has no exact solution");
  const auto u = [&p](Point2 x) { return exact_eval(p, x).value; };
  double worst = 0.0;
  for (const Point2& s : samples) {
    worst = std::max(worst, std::abs(helmholtz_residual(u, p.k, s) - source_f(p, s)));
  }
  return worst;
}

std::vector<Point2> halton_points(std::size_t n) {
  auto radical_inverse = [](std::size_t i, unsigned base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
      f /= base;
      r += f * static_cast<double>(i % base);
      i /= base;
    }
    return r;
  };
  std::vector<Point2> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back({radical_inverse(i, 2), radical_inverse(i, 3)});
  return out;
}

}  // namespace helm
