#pragma once

#include <cmath>
#include <complex>

namespace helm {

using Complex = std::complex<double>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }

/// Complex 2-vector, used for gradients of complex fields.
struct CVec2 {
  Complex x{};
  Complex y{};

  CVec2& operator+=(const CVec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  CVec2& operator-=(const CVec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend CVec2 operator+(CVec2 a, const CVec2& b) { return a += b; }
  friend CVec2 operator-(CVec2 a, const CVec2& b) { return a -= b; }
  friend CVec2 operator*(Complex s, const CVec2& a) { return {s * a.x, s * a.y}; }
  friend CVec2 operator*(double s, const CVec2& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const CVec2& a, const CVec2& b) = default;
};

/// Squared Euclidean length sum |x|^2 + |y|^2.
inline double norm_sq(const CVec2& v) { return std::norm(v.x) + std::norm(v.y); }

/// Unconjugated product with a real direction.
inline Complex dot(const CVec2& v, Point2 d) { return v.x * d.x + v.y * d.y; }

}  // namespace helm
