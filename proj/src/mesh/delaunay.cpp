#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "helm/mesh.hpp"
#include "predicates.hpp"

namespace helm {
namespace {

using geom::incircle;
using geom::orient2d;

/// Incremental Bowyer-Watson triangulation inside a large super triangle.
/// Super vertices occupy indices 0..2; input points follow.
class BowyerWatson {
 public:
  explicit BowyerWatson(std::span<const Point2> points) {
    double xmin = points[0].x, xmax = xmin, ymin = points[0].y, ymax = ymin;
    for (const Point2& p : points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-3});
    const Point2 c{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
    const double r = 1e4 * span;
    pts_.push_back({c.x - 2 * r, c.y - r});
    pts_.push_back({c.x + 2 * r, c.y - r});
    pts_.push_back({c.x, c.y + 2 * r});
    pts_.insert(pts_.end(), points.begin(), points.end());
    tris_.push_back({{0, 1, 2}, {-1, -1, -1}, true});
    for (std::size_t i = 3; i < pts_.size(); ++i) insert(static_cast<int>(i));
  }

  /// Triangles not touching the super vertices, with indices into the input.
  std::vector<Mesh::Triangle> triangles() const {
    std::vector<Mesh::Triangle> out;
    for (const Tri& t : tris_) {
      if (!t.alive || t.v[0] < 3 || t.v[1] < 3 || t.v[2] < 3) continue;
      out.push_back({t.v[0] - 3, t.v[1] - 3, t.v[2] - 3});
    }
    return out;
  }

 private:
  struct Tri {
    std::array<int, 3> v;
    std::array<int, 3> nbr;  // nbr[j] lies across the edge opposite v[j]
    bool alive;
  };

  int locate(Point2 p) {
    int t = last_;
    if (!tris_[static_cast<std::size_t>(t)].alive) t = first_alive();
    const std::size_t cap = 4 * tris_.size() + 16;
    for (std::size_t step = 0; step < cap; ++step) {
      const Tri& tri = tris_[static_cast<std::size_t>(t)];
      int next = -1;
      for (int k = 0; k < 3; ++k) {
        const int j = static_cast<int>((k + step) % 3);
        if (orient2d(pts_[tri.v[(j + 1) % 3]], pts_[tri.v[(j + 2) % 3]], p) < 0) {
          next = tri.nbr[j];
          break;
        }
      }
      if (next < 0) return t;
      t = next;
    }
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      const Tri& tri = tris_[i];
      if (!tri.alive) continue;
      if (orient2d(pts_[tri.v[0]], pts_[tri.v[1]], p) >= 0 && orient2d(pts_[tri.v[1]], pts_[tri.v[2]], p) >= 0 &&
          orient2d(pts_[tri.v[2]], pts_[tri.v[0]], p) >= 0) {
        return static_cast<int>(i);
      }
    }
    throw MeshError("Delaunay point location failed");
  }

  int first_alive() const {
    for (std::size_t i = tris_.size(); i-- > 0;) {
      if (tris_[i].alive) return static_cast<int>(i);
    }
    return 0;
  }

  bool in_circle(const Tri& t, Point2 p) const {
    return incircle(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], p) > 0;
  }

  void insert(int pi) {
    const Point2 p = pts_[static_cast<std::size_t>(pi)];
    const int start = locate(p);
    for (int v : tris_[static_cast<std::size_t>(start)].v) {
      if (pts_[static_cast<std::size_t>(v)] == p) throw MeshError("duplicate point in Delaunay input");
    }

    std::vector<int> cavity{start};
    mark_.resize(tris_.size(), 0);
    mark_[static_cast<std::size_t>(start)] = 1;
    for (std::size_t q = 0; q < cavity.size(); ++q) {
      for (int nb : tris_[static_cast<std::size_t>(cavity[q])].nbr) {
        if (nb < 0 || mark_[static_cast<std::size_t>(nb)]) continue;
        if (in_circle(tris_[static_cast<std::size_t>(nb)], p)) {
          mark_[static_cast<std::size_t>(nb)] = 1;
          cavity.push_back(nb);
        }
      }
    }

    struct Rim {
      int a, b, outside, tri;
    };
    std::vector<Rim> rim;
    for (int c : cavity) {
      const Tri& tri = tris_[static_cast<std::size_t>(c)];
      for (int j = 0; j < 3; ++j) {
        const int nb = tri.nbr[j];
        if (nb >= 0 && mark_[static_cast<std::size_t>(nb)]) continue;
        rim.push_back({tri.v[(j + 1) % 3], tri.v[(j + 2) % 3], nb, -1});
      }
    }
    for (int c : cavity) {
      tris_[static_cast<std::size_t>(c)].alive = false;
      mark_[static_cast<std::size_t>(c)] = 0;
    }

    for (Rim& r : rim) {
      if (orient2d(pts_[static_cast<std::size_t>(r.a)], pts_[static_cast<std::size_t>(r.b)], p) <= 0) {
        throw MeshError("Delaunay cavity is not star-shaped");
      }
      r.tri = static_cast<int>(tris_.size());
      tris_.push_back({{r.a, r.b, pi}, {-1, -1, r.outside}, true});
      if (r.outside >= 0) {
        Tri& out = tris_[static_cast<std::size_t>(r.outside)];
        for (int j = 0; j < 3; ++j) {
          const int u = out.v[(j + 1) % 3], w = out.v[(j + 2) % 3];
          if ((u == r.b && w == r.a) || (u == r.a && w == r.b)) out.nbr[j] = r.tri;
        }
      }
    }
    // New triangle (a, b, p): across (b, p) is the one starting at b, across
    // (p, a) the one ending at a.
    for (Rim& r : rim) {
      Tri& t = tris_[static_cast<std::size_t>(r.tri)];
      for (const Rim& s : rim) {
        if (s.a == r.b) t.nbr[0] = s.tri;
        if (s.b == r.a) t.nbr[1] = s.tri;
      }
    }
    last_ = rim.back().tri;
  }

  std::vector<Point2> pts_;
  std::vector<Tri> tris_;
  std::vector<char> mark_;
  int last_ = 0;
};

bool point_in_polygon(Point2 p, std::span<const Point2> poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = poly[i], b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside;
}

double distance_to_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double s = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
  return distance(p, a + s * d);
}

double distance_to_boundary(Point2 p, std::span<const Point2> poly) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, distance_to_segment(p, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int o1 = orient2d(a, b, c), o2 = orient2d(a, b, d);
  const int o3 = orient2d(c, d, a), o4 = orient2d(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  auto on_segment = [](Point2 p, Point2 q, Point2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
         (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

void check_polygon(std::span<const Point2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) throw std::invalid_argument("polygon needs at least three vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(poly[i].x) || !std::isfinite(poly[i].y)) throw std::invalid_argument("non-finite vertex");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (poly[i] == poly[j]) throw std::invalid_argument("polygon has repeated vertices");
    }
  }
  double twice_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice_area += cross(poly[i], poly[(i + 1) % n]);
  if (twice_area == 0.0) throw std::invalid_argument("polygon is degenerate (zero area)");
  if (twice_area < 0.0) throw std::invalid_argument("polygon must be counterclockwise");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
        throw std::invalid_argument("polygon is not simple");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (orient2d(poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]) == 0 &&
        dot(poly[i] - poly[(i + n - 1) % n], poly[(i + 1) % n] - poly[i]) < 0) {
      throw std::invalid_argument("polygon folds back on itself");
    }
  }
}

/// Triangulates the point set, splitting boundary segments that are missing
/// from the triangulation until every one is present, then drops triangles
/// outside the polygon. `boundary` is the closed chain of boundary points
/// (indices into `points`), updated in place when segments are split.
std::vector<Mesh::Triangle> conforming_triangulation(std::vector<Point2>& points, std::vector<int>& boundary,
                                                     std::span<const Point2> polygon) {
  for (int round = 0; round < 64; ++round) {
    BowyerWatson bw(points);
    std::vector<Mesh::Triangle> tris = bw.triangles();
    std::set<std::pair<int, int>> edges;
    for (const auto& t : tris) {
      for (int j = 0; j < 3; ++j) {
        const int a = t[j], b = t[(j + 1) % 3];
        edges.insert({std::min(a, b), std::max(a, b)});
      }
    }
    std::vector<int> next;
    bool split = false;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      const int a = boundary[i], b = boundary[(i + 1) % boundary.size()];
      next.push_back(a);
      if (!edges.count({std::min(a, b), std::max(a, b)})) {
        next.push_back(static_cast<int>(points.size()));
        points.push_back(0.5 * (points[static_cast<std::size_t>(a)] + points[static_cast<std::size_t>(b)]));
        split = true;
      }
    }
    boundary = std::move(next);
    if (split) continue;

    std::vector<Mesh::Triangle> kept;
    for (const auto& t : tris) {
      const Point2 c = (1.0 / 3.0) * (points[t[0]] + points[t[1]] + points[t[2]]);
      if (point_in_polygon(c, polygon)) kept.push_back(t);
    }
    return kept;
  }
  throw MeshError("boundary recovery did not converge");
}

/// Removes points no triangle references and renumbers.
Mesh compact_mesh(const std::vector<Point2>& points, std::vector<Mesh::Triangle> tris) {
  std::vector<int> map(points.size(), -1);
  std::vector<Point2> used;
  for (auto& t : tris) {
    for (int& v : t) {
      if (map[static_cast<std::size_t>(v)] < 0) {
        map[static_cast<std::size_t>(v)] = static_cast<int>(used.size());
        used.push_back(points[static_cast<std::size_t>(v)]);
      }
      v = map[static_cast<std::size_t>(v)];
    }
  }
  return Mesh::from_triangles(std::move(used), std::move(tris));
}

}  // namespace

Mesh delaunay_mesh(std::span<const Point2> polygon, double target_h, std::uint64_t seed) {
  if (!(target_h > 0.0)) throw std::invalid_argument("target_h must be positive");
  check_polygon(polygon);

  std::vector<Point2> points;
  std::vector<int> boundary;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point2 a = polygon[i], b = polygon[(i + 1) % polygon.size()];
    const int pieces = std::max(1, static_cast<int>(std::ceil(distance(a, b) / target_h - 1e-12)));
    for (int s = 0; s < pieces; ++s) {
      boundary.push_back(static_cast<int>(points.size()));
      points.push_back(a + (static_cast<double>(s) / pieces) * (b - a));
    }
  }

  double xmin = polygon[0].x, xmax = xmin, ymin = polygon[0].y, ymax = ymin;
  for (const Point2& p : polygon) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const int nx = std::max(1, static_cast<int>(std::ceil((xmax - xmin) / target_h - 1e-12)));
  const int ny = std::max(1, static_cast<int>(std::ceil((ymax - ymin) / target_h - 1e-12)));
  const double sx = (xmax - xmin) / nx, sy = (ymax - ymin) / ny;
  const double jitter = 0.2 * std::min(sx, sy);
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int j = 1; j < ny; ++j) {
    for (int i = 1; i < nx; ++i) {
      const double dx = (2.0 * uniform() - 1.0) * jitter;
      const double dy = (2.0 * uniform() - 1.0) * jitter;
      const Point2 p{xmin + i * sx + dx, ymin + j * sy + dy};
      if (point_in_polygon(p, polygon) && distance_to_boundary(p, polygon) >= 0.5 * target_h) points.push_back(p);
    }
  }

  std::vector<Mesh::Triangle> tris = conforming_triangulation(points, boundary, polygon);

  // Laplacian smoothing of interior points, then a fresh Delaunay pass.
  std::vector<char> fixed(points.size(), 0);
  for (int b : boundary) fixed[static_cast<std::size_t>(b)] = 1;
  for (int sweep = 0; sweep < 3; ++sweep) {
    std::vector<Point2> sum(points.size());
    std::vector<int> count(points.size(), 0);
    for (const auto& t : tris) {
      for (int j = 0; j < 3; ++j) {
        const int a = t[j], b = t[(j + 1) % 3];
        // Every edge at an interior point is seen from both of its triangles.
        sum[static_cast<std::size_t>(a)] = sum[static_cast<std::size_t>(a)] + points[static_cast<std::size_t>(b)];
        sum[static_cast<std::size_t>(b)] = sum[static_cast<std::size_t>(b)] + points[static_cast<std::size_t>(a)];
        ++count[static_cast<std::size_t>(a)];
        ++count[static_cast<std::size_t>(b)];
      }
    }
    std::vector<Point2> moved = points;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (fixed[i] || count[i] == 0) continue;
      const Point2 c = (1.0 / count[i]) * sum[i];
      if (point_in_polygon(c, polygon) && distance_to_boundary(c, polygon) >= 0.25 * target_h) moved[i] = c;
    }
    points = std::move(moved);
  }
  tris = conforming_triangulation(points, boundary, polygon);
  return compact_mesh(points, std::move(tris));
}

}  // namespace helm
