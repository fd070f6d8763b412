#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "helm/analytic.hpp"
#include "helm/mesh.hpp"
#include "helm/solve.hpp"

namespace helm {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class MeshSource { structured, delaunay, file };

struct StudyConfig {
  DomainTag domain = DomainTag::square;
  ProblemKind problem = ProblemKind::bessel_exact;
  std::vector<double> k{10.0};
  /// Structured meshes: m from `level_lo` doubling up to `level_hi`.
  /// Delaunay and file meshes: refinement counts level_lo..level_hi.
  int level_lo = 8;
  int level_hi = 64;
  MeshSource mesh = MeshSource::structured;
  std::string mesh_file;
  Diagonal diagonal = Diagonal::north_east;
  double target_h = 0.15;
  SolveOptions solver;
  int quad_load = 6;
  int quad_err = 6;
  std::uint64_t seed = 1;
  std::string out;
  double kh = 1.0;
  double eps = 0.5;

  /// Throws ConfigError.
  void validate() const;
  /// Level values in run order.
  std::vector<int> levels() const;
};

/// "a..b" or a single integer.
std::pair<int, int> parse_level_range(const std::string& s);
/// "structured", "delaunay" or "file:<path>".
void parse_mesh_source(const std::string& s, StudyConfig& cfg);
Diagonal parse_diagonal(const std::string& s);

/// One refinement level. Relative quantities divide by |u|_1 (errors of
/// gradients), ||u||_0 and the energy norm; eta is absolute and
/// effectivity = eta / ||grad u - grad u_h||_0.
struct ConvergenceRecord {
  double k = 0.0;
  int m = 0;
  double h = 0.0;
  std::size_t dof = 0;
  std::optional<double> rel_h1_fem;
  std::optional<double> rel_l2_fem;
  std::optional<double> rel_energy_fem;
  std::optional<double> rel_grad_ppr;
  std::optional<double> rel_grad_rppr;
  std::optional<double> rel_grad_ppr_interp;
  std::optional<double> rel_grad_rfem;
  std::optional<double> eta;
  std::optional<double> effectivity;
  std::optional<double> order_fem;
  std::optional<double> order_ppr;
  std::string status = "ok";
  /// ||G_h u_h - grad u_h||_0 / |u|_1, pollution scans only.
  std::optional<double> rel_grad_diff;
};

extern const char* const kCsvHeader;

std::string format_csv(const std::vector<ConvergenceRecord>& records, bool with_grad_diff = false);
std::vector<ConvergenceRecord> parse_csv(const std::string& text);
/// Writes through a temporary file and a rename.
void write_csv_atomic(const std::string& path, const std::vector<ConvergenceRecord>& records,
                      bool with_grad_diff = false);
std::vector<ConvergenceRecord> read_csv(const std::string& path);

/// Coarsest mesh of the configured family for level value `level`.
Mesh build_study_mesh(const StudyConfig& cfg, int level);

std::vector<ConvergenceRecord> run_refinement_study(const StudyConfig& cfg);
/// Hexagon, m = round(k / kh) for every k, one solve each.
std::vector<ConvergenceRecord> run_pollution_scan(const StudyConfig& cfg);
/// Same level loop as the refinement study for a problem without an exact
/// solution: only eta is filled in.
std::vector<ConvergenceRecord> run_estimator_only(const StudyConfig& cfg);

bool any_failed(const std::vector<ConvergenceRecord>& records);

}  // namespace helm
