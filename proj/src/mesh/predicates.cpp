// Floating-point filters with an exact rational fallback. The filters use
// the static error bounds for the orientation and in-circle determinants;
// only near-degenerate inputs reach the multiprecision path.

#include "predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cfloat>
#include <cmath>

namespace helm::geom {
namespace {

using boost::multiprecision::cpp_rational;

constexpr double kEps = DBL_EPSILON / 2;
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

cpp_rational exact(double v) {
  int exp = 0;
  const double frac = std::frexp(v, &exp);
  const auto mant = static_cast<long long>(std::ldexp(frac, 53));
  cpp_rational r(mant);
  exp -= 53;
  if (exp > 0) {
    r *= cpp_rational(boost::multiprecision::cpp_int(1) << exp);
  } else if (exp < 0) {
    r /= cpp_rational(boost::multiprecision::cpp_int(1) << -exp);
  }
  return r;
}

}  // namespace

int orient2d(Point2 a, Point2 b, Point2 c) {
  const double l = (a.x - c.x) * (b.y - c.y);
  const double r = (a.y - c.y) * (b.x - c.x);
  const double det = l - r;
  const double bound = kOrientBound * (std::abs(l) + std::abs(r));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  const cpp_rational ax = exact(a.x), ay = exact(a.y), bx = exact(b.x), by = exact(b.y);
  const cpp_rational cx = exact(c.x), cy = exact(c.y);
  return boost::multiprecision::sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx));
}

int incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kIncircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;

  const cpp_rational dx = exact(d.x), dy = exact(d.y);
  const cpp_rational ax = exact(a.x) - dx, ay = exact(a.y) - dy;
  const cpp_rational bx = exact(b.x) - dx, by = exact(b.y) - dy;
  const cpp_rational cx = exact(c.x) - dx, cy = exact(c.y) - dy;
  const cpp_rational al = ax * ax + ay * ay, bl = bx * bx + by * by, cl = cx * cx + cy * cy;
  return boost::multiprecision::sign(al * (bx * cy - cx * by) + bl * (cx * ay - ax * cy) + cl * (ax * by - bx * ay));
}

}  // namespace helm::geom
