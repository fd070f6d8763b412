#include <algorithm>
#include <cmath>

#include "helm/mesh_quality.hpp"

namespace helm {
namespace {

constexpr double kExactDefect = 1e-14;

// Least-squares slope of log(y) against log(x) minus one, or nothing when
// any defect vanishes.
std::optional<double> fit_alpha(const std::vector<double>& h, const std::vector<double>& defect) {
  if (h.size() < 3) return std::nullopt;
  for (double d : defect) {
    if (d < kExactDefect) return std::nullopt;
  }
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(defect[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx) - 1.0;
}

}  // namespace

MeshQualityReport alpha_report(std::span<const Mesh* const> meshes) {
  MeshQualityReport report;
  for (const Mesh* mesh : meshes) {
    const EdgeGeometry geo = edge_geometry(*mesh);
    double interior = 0.0, boundary = 0.0;
    for (const auto& slot : geo.by_edge) {
      const EdgeSide& s = geo.sides[static_cast<std::size_t>(slot[0])];
      if (slot[1] < 0) {
        boundary = std::max(boundary, std::abs(s.h_next - s.h_prev));
      } else {
        const EdgeSide& o = geo.sides[static_cast<std::size_t>(slot[1])];
        interior = std::max(interior, std::abs(s.h_prev - o.h_prev) + std::abs(s.h_next - o.h_next));
      }
    }
    report.h.push_back(mesh->h_max());
    report.interior_defect.push_back(interior);
    report.boundary_defect.push_back(boundary);
  }
  if (meshes.empty()) return report;
  report.max_interior_defect = report.interior_defect.back();
  report.max_boundary_defect = report.boundary_defect.back();
  report.exact = std::all_of(report.interior_defect.begin(), report.interior_defect.end(),
                             [](double d) { return d < kExactDefect; }) &&
                 std::all_of(report.boundary_defect.begin(), report.boundary_defect.end(),
                             [](double d) { return d < kExactDefect; });
  report.fitted_alpha = fit_alpha(report.h, report.interior_defect);
  report.fitted_alpha_boundary = fit_alpha(report.h, report.boundary_defect);
  return report;
}

}  // namespace helm
