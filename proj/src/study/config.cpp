#include <cmath>
#include <charconv>

#include "helm/study.hpp"

namespace helm {
namespace {

int parse_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

}  // namespace

std::pair<int, int> parse_level_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int v = parse_int(s);
    return {v, v};
  }
  return {parse_int(s.substr(0, dots)), parse_int(s.substr(dots + 2))};
}

void parse_mesh_source(const std::string& s, StudyConfig& cfg) {
  if (s == "structured") {
    cfg.mesh = MeshSource::structured;
  } else if (s == "delaunay") {
    cfg.mesh = MeshSource::delaunay;
  } else if (s.rfind("file:", 0) == 0 && s.size() > 5) {
    cfg.mesh = MeshSource::file;
    cfg.mesh_file = s.substr(5);
  } else {
    throw ConfigError("unknown mesh source '" + s + "'");
  }
}

Diagonal parse_diagonal(const std::string& s) {
  if (s == "ne") return Diagonal::north_east;
  if (s == "nw") return Diagonal::north_west;
  throw ConfigError("unknown diagonal '" + s + "'");
}

void StudyConfig::validate() const {
  if (k.empty()) throw ConfigError("no wave numbers given");
  for (double v : k) {
    if (!(v >= 1.0) || !std::isfinite(v)) throw ConfigError("wave numbers must be finite and >= 1");
  }
  if (level_lo > level_hi) throw ConfigError("empty level range");
  if (mesh == MeshSource::structured) {
    if (level_lo < 1) throw ConfigError("structured levels need m >= 1");
    int m = level_lo;
    while (m < level_hi) m *= 2;
    if (m != level_hi) throw ConfigError("structured level range must double from a to b");
    if (domain == DomainTag::lshape && level_lo % 2 != 0) throw ConfigError("L-shape needs even m");
  } else if (level_lo < 0) {
    throw ConfigError("refinement counts must be >= 0");
  }
  if (mesh == MeshSource::delaunay && !(target_h > 0.0)) throw ConfigError("target_h must be positive");
  if (mesh == MeshSource::file && mesh_file.empty()) throw ConfigError("mesh file path missing");
  if (!(solver.tol >= 1e-14)) throw ConfigError("solve tolerance must be >= 1e-14");
  if (quad_load < 1 || quad_load > 8 || quad_err < 1 || quad_err > 8) {
    throw ConfigError("quadrature degrees must lie in 1..8");
  }
  if (!(kh > 0.0)) throw ConfigError("kh must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
}

std::vector<int> StudyConfig::levels() const {
  std::vector<int> out;
  if (mesh == MeshSource::structured) {
    for (int m = level_lo; m <= level_hi; m *= 2) out.push_back(m);
  } else {
    for (int r = level_lo; r <= level_hi; ++r) out.push_back(r);
  }
  return out;
}

}  // namespace helm
