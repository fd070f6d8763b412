#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "helm/analytic.hpp"

namespace helm {
namespace {

// Power series, summed in long double so that the cancellation near x = 12
// (largest term ~ 2e4) still leaves full double accuracy.
double series(int n, double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double term = n == 0 ? 1.0L : 0.5L * x;
  long double sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<long double>(m) * (m + n));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-30L) break;
  }
  return static_cast<double>(sum);
}

// Miller's backward recurrence normalized by J0 + 2 sum J_2k = 1.
double miller(int n, double x) {
  const int start = 2 * ((static_cast<int>(x) + 60) / 2);
  double next = 0.0, cur = 1e-300;
  double sum = 0.0, j0 = 0.0, j1 = 0.0;
  for (int m = start; m > 0; --m) {
    const double prev = 2.0 * m / x * cur - next;
    next = cur;
    cur = prev;
    if (m - 1 == 1) j1 = cur;
    if (m - 1 == 0) j0 = cur;
    if ((m - 1) % 2 == 0 && m - 1 > 0) sum += 2.0 * cur;
    if (std::fabs(cur) > 1e250) {
      next *= 1e-250;
      cur *= 1e-250;
      sum *= 1e-250;
      j1 *= 1e-250;
      j0 *= 1e-250;
    }
  }
  sum += j0;
  return (n == 0 ? j0 : j1) / sum;
}

// Hankel asymptotic expansion, summed until the terms stop shrinking or drop
// below 1e-17.
double asymptotic(int n, double x) {
  const double mu = 4.0 * n * n;
  double p = 1.0, q = 0.0, a = 1.0, last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::fabs(a) > last) break;
    last = std::fabs(a);
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 1) {
      q += sign * a;
    } else {
      p += sign * a;
    }
    if (std::fabs(a) < 1e-17) break;
  }
  const double c = std::cos(x), s = std::sin(x);
  const double r = std::numbers::sqrt2 / 2.0;
  double cos_chi, sin_chi;
  if (n == 0) {
    cos_chi = r * (c + s);
    sin_chi = r * (s - c);
  } else {
    cos_chi = r * (s - c);
    sin_chi = -r * (s + c);
  }
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

namespace detail {
double bessel_series(int order, double x) { return series(order, x); }
double bessel_miller(int order, double x) { return miller(order, x); }
double bessel_asymptotic(int order, double x) { return asymptotic(order, x); }
}  // namespace detail

double bessel_j(int order, double x) {
  if (order != 0 && order != 1) throw std::invalid_argument("bessel_j supports orders 0 and 1");
  if (!(x >= 0.0 && x <= 1e4)) throw std::domain_error("bessel_j argument outside [0, 1e4]");
  if (x <= 12.0) return series(order, x);
  if (x <= 30.0) return miller(order, x);
  return asymptotic(order, x);
}

}  // namespace helm
