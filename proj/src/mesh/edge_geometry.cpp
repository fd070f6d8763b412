#include <cmath>

#include "helm/mesh_quality.hpp"

namespace helm {

EdgeGeometry edge_geometry(const Mesh& mesh) {
  EdgeGeometry out;
  out.by_edge.assign(mesh.num_edges(), {-1, -1});
  out.sides.reserve(3 * mesh.num_triangles());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double area = mesh.area(static_cast<int>(t));
    for (int j = 0; j < 3; ++j) {
      // Local vertex j is opposite the edge (a, b) = (v[j+1], v[j+2]).
      const Point2 a = mesh.node(tri[(j + 1) % 3]);
      const Point2 b = mesh.node(tri[(j + 2) % 3]);
      const Point2 c = mesh.node(tri[j]);
      EdgeSide s;
      s.edge = mesh.triangle_edge(static_cast<int>(t), j);
      s.triangle = static_cast<int>(t);
      s.h_e = distance(a, b);
      s.h_next = distance(b, c);
      s.h_prev = distance(c, a);
      const Point2 ca = a - c, cb = b - c;
      // cot(theta) = (ca . cb) / |ca x cb| from raw coordinates.
      const double cot = dot(ca, cb) / cross(ca, cb);
      s.theta = std::atan2(cross(ca, cb), dot(ca, cb));
      s.beta = cot * (s.h_next * s.h_next - s.h_prev * s.h_prev) / 12.0;
      s.gamma = cot * area / 3.0;
      s.tangent = (1.0 / s.h_e) * (b - a);
      s.normal = {s.tangent.y, -s.tangent.x};
      auto& slot = out.by_edge[static_cast<std::size_t>(s.edge)];
      (slot[0] < 0 ? slot[0] : slot[1]) = static_cast<int>(out.sides.size());
      out.sides.push_back(s);
    }
  }
  return out;
}

}  // namespace helm
