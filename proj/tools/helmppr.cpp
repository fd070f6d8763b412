// Study runner: regenerates convergence tables, pollution scans, estimator
// runs and critical mesh sizes as CSV.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "helm/assembly.hpp"
#include "helm/mesh_quality.hpp"
#include "helm/metrics.hpp"
#include "helm/simd/kernels.hpp"
#include "helm/study.hpp"

namespace {

using namespace helm;

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kPartial = 2;

struct RawOptions {
  std::string domain = "square";
  std::string problem;
  std::string mesh = "structured";
  std::vector<double> k{10.0};
  std::string levels = "8..64";
  double kh = 1.0;
  double eps = 0.5;
  std::string diagonal = "ne";
  std::string solver = "direct";
  double solve_tol = 1e-10;
  int quad_load = 6;
  int quad_err = 6;
  std::uint64_t seed = 1;
  std::string out;
  double target_h = 0.15;
  std::string quantity = "fem";
  bool slow = false;
};

StudyConfig to_config(const RawOptions& o, ProblemKind default_problem) {
  StudyConfig cfg;
  cfg.domain = parse_domain(o.domain);
  cfg.problem = o.problem.empty() ? default_problem : parse_problem(o.problem);
  parse_mesh_source(o.mesh, cfg);
  cfg.k = o.k;
  std::tie(cfg.level_lo, cfg.level_hi) = parse_level_range(o.levels);
  cfg.kh = o.kh;
  cfg.eps = o.eps;
  cfg.diagonal = parse_diagonal(o.diagonal);
  cfg.solver.kind = parse_solver(o.solver);
  cfg.solver.tol = o.solve_tol;
  cfg.quad_load = o.quad_load;
  cfg.quad_err = o.quad_err;
  cfg.seed = o.seed;
  cfg.out = o.out;
  cfg.target_h = o.target_h;
  cfg.validate();
  if (!o.slow && cfg.mesh == MeshSource::structured && cfg.level_hi > 512) {
    throw ConfigError("levels beyond m = 512 need --slow");
  }
  return cfg;
}

int emit(const std::vector<ConvergenceRecord>& records, const StudyConfig& cfg, bool grad_diff) {
  if (cfg.out.empty()) std::cout << format_csv(records, grad_diff);
  for (const auto& r : records) {
    if (r.status != "ok") std::cerr << "k=" << r.k << " m=" << r.m << ": " << r.status << '\n';
  }
  return any_failed(records) ? kPartial : kOk;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << text;
  }
  std::rename(tmp.c_str(), path.c_str());
}

int run_critical(const RawOptions& o) {
  StudyConfig cfg = to_config(o, ProblemKind::bessel_exact);
  CriticalOptions opts;
  opts.solver = cfg.solver;
  if (o.slow) opts.m_max = 2048;
  const CriticalQuantity q = o.quantity == "ppr" ? CriticalQuantity::recovered_grad : CriticalQuantity::fem_grad;
  if (o.quantity != "ppr" && o.quantity != "fem") throw ConfigError("quantity must be fem or ppr");
  std::ostringstream out;
  out << "k,eps,m,h,reached,solves\n";
  std::vector<double> ks, hs;
  bool partial = false;
  for (double k : cfg.k) {
    const CriticalResult r = critical_mesh_size(k, cfg.eps, q, opts);
    char line[160];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%d,%.17g,%d,%d\n", r.k, r.eps, r.reached ? r.m : 0,
                  r.reached ? r.h : 0.0, r.reached ? 1 : 0, r.solves);
    out << line;
    if (r.reached) {
      ks.push_back(k);
      hs.push_back(r.h);
    } else {
      partial = true;
      std::cerr << "k=" << k << ": tolerance not reached up to m=" << opts.m_max << '\n';
    }
  }
  write_text(cfg.out, out.str());
  if (ks.size() >= 2) std::cerr << "slope of log h against log k: " << fit_order_ls(ks, hs) << '\n';
  return partial ? kPartial : kOk;
}

int run_mesh_report(const RawOptions& o) {
  const StudyConfig cfg = to_config(o, ProblemKind::bessel_exact);
  std::vector<Mesh> meshes;
  for (int level : cfg.levels()) {
    meshes.push_back(build_study_mesh(cfg, level));
    meshes.back().validate();
  }
  std::vector<const Mesh*> ptrs;
  for (const Mesh& m : meshes) ptrs.push_back(&m);
  const MeshQualityReport rep = alpha_report(ptrs);
  std::ostringstream out;
  out << "level,nodes,triangles,edges,h_max,interior_defect,boundary_defect\n";
  const auto levels = cfg.levels();
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    char line[200];
    std::snprintf(line, sizeof line, "%d,%zu,%zu,%zu,%.17g,%.17g,%.17g\n", levels[i], meshes[i].num_nodes(),
                  meshes[i].num_triangles(), meshes[i].num_edges(), meshes[i].h_max(), rep.interior_defect[i],
                  rep.boundary_defect[i]);
    out << line;
  }
  write_text(cfg.out, out.str());
  std::cerr << (rep.exact ? "exact (defect 0)" : "defects present");
  if (rep.fitted_alpha) std::cerr << ", fitted alpha " << *rep.fitted_alpha;
  if (rep.fitted_alpha_boundary) std::cerr << ", boundary alpha " << *rep.fitted_alpha_boundary;
  std::cerr << '\n';
  return kOk;
}

int run_dump(const RawOptions& o) {
  const StudyConfig cfg = to_config(o, ProblemKind::bessel_exact);
  const Mesh mesh = build_study_mesh(cfg, cfg.level_lo);
  const ProblemSpec p = ProblemSpec::make(cfg.problem, cfg.k.front(), cfg.domain);
  const LinearSystem sys = assemble_helmholtz(mesh, p);
  std::ostringstream out;
  write_matrix_market(out, sys.A);
  write_text(cfg.out, out.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helmholtz P1 FEM with polynomial preserving recovery and Richardson extrapolation"};
  app.set_config("--config", "", "Flat key = value file; every key matches a long flag name");
  app.fallthrough();
  app.require_subcommand(1);
  RawOptions o;
  app.add_option("--domain", o.domain, "hexagon, square or lshape")
      ->check(CLI::IsMember({"hexagon", "square", "lshape"}));
  app.add_option("--problem", o.problem, "bessel (exact solution) or gaussian (source only)")
      ->check(CLI::IsMember({"bessel", "gaussian"}));
  app.add_option("--mesh", o.mesh, "structured, delaunay or file:<path>");
  app.add_option("--k", o.k, "Wave numbers, comma separated")->delimiter(',');
  app.add_option("--levels", o.levels, "a..b: m doubling (structured) or refinement counts");
  app.add_option("--kh", o.kh, "Fixed k h for pollution scans");
  app.add_option("--eps", o.eps, "Relative error tolerance for critical-h");
  app.add_option("--diagonal", o.diagonal, "Square cell diagonal")->check(CLI::IsMember({"ne", "nw"}));
  app.add_option("--solver", o.solver, "direct or iterative")->check(CLI::IsMember({"direct", "iterative"}));
  app.add_option("--solve-tol", o.solve_tol, "Relative residual target");
  app.add_option("--quad-load", o.quad_load, "Triangle quadrature degree for the load");
  app.add_option("--quad-err", o.quad_err, "Triangle quadrature degree for error norms");
  app.add_option("--seed", o.seed, "Seed for Delaunay point placement");
  app.add_option("--out", o.out, "Output path (stdout when omitted)");
  app.add_option("--target-h", o.target_h, "Delaunay boundary spacing");
  app.add_option("--quantity", o.quantity, "critical-h error quantity: fem or ppr");
  app.add_flag("--slow", o.slow, "Allow runs beyond desk scale");

  auto* study = app.add_subcommand("study", "Refinement study with exact-error columns");
  auto* pollution = app.add_subcommand("pollution", "Hexagon scan over k at fixed kh");
  auto* estimate = app.add_subcommand("estimate", "Estimator per level for the gaussian source");
  auto* critical = app.add_subcommand("critical-h", "Critical mesh size per k");
  auto* report = app.add_subcommand("mesh-report", "Mesh counts and parallelogram defects");
  auto* dump = app.add_subcommand("dump-matrix", "Matrix Market dump of the system matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (const char* env = std::getenv("HELM_SIMD"); env) {
      std::cerr << "kernel backend: " << simd::backend_name(simd::active_backend()) << '\n';
    }
    if (study->parsed()) {
      const StudyConfig cfg = to_config(o, ProblemKind::bessel_exact);
      return emit(run_refinement_study(cfg), cfg, false);
    }
    if (pollution->parsed()) {
      RawOptions po = o;
      po.domain = "hexagon";
      po.levels = "1";
      const StudyConfig cfg = to_config(po, ProblemKind::bessel_exact);
      return emit(run_pollution_scan(cfg), cfg, true);
    }
    if (estimate->parsed()) {
      const StudyConfig cfg = to_config(o, ProblemKind::gaussian_source);
      return emit(run_estimator_only(cfg), cfg, false);
    }
    if (critical->parsed()) {
      RawOptions co = o;
      co.domain = "hexagon";
      co.levels = "1";
      return run_critical(co);
    }
    if (report->parsed()) return run_mesh_report(o);
    if (dump->parsed()) return run_dump(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPartial;
  }
  return kConfigError;
}
