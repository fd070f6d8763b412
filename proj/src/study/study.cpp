#include <cmath>
#include <memory>
#include <numbers>

#include "helm/extrapolate.hpp"
#include "helm/mesh_io.hpp"
#include "helm/metrics.hpp"
#include "helm/recovery.hpp"
#include "helm/study.hpp"

namespace helm {
namespace {

std::vector<Point2> hexagon_polygon() {
  std::vector<Point2> out;
  for (int j = 0; j < 6; ++j) {
    const double a = j * std::numbers::pi / 3.0;
    out.push_back({std::cos(a), std::sin(a)});
  }
  return out;
}

std::vector<Point2> domain_polygon(DomainTag d) {
  switch (d) {
    case DomainTag::hexagon:
      return hexagon_polygon();
    case DomainTag::square:
      return unit_square_polygon();
    case DomainTag::lshape:
      return l_shape_polygon();
  }
  throw ConfigError("unknown domain");
}

std::vector<Complex> nodal_interpolant(const Mesh& mesh, const ProblemSpec& p) {
  std::vector<Complex> out(mesh.num_nodes());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = exact_eval(p, mesh.nodes()[i]).value;
  return out;
}

LoadQuadrature load_quadrature(const StudyConfig& cfg) {
  LoadQuadrature q;
  q.triangle = quadrature_rule(QuadKind::triangle, cfg.quad_load);
  q.edge = quadrature_rule(QuadKind::edge, std::max(cfg.quad_load, 6));
  return q;
}

struct PreviousLevel {
  std::shared_ptr<const Mesh> mesh;
  std::vector<Complex> uh;
  std::vector<CVec2> guh;
  std::optional<double> rel_h1, rel_ppr;
  bool ok = false;
};

void run_levels(const StudyConfig& cfg, double k, std::vector<ConvergenceRecord>& out) {
  const ProblemSpec p = ProblemSpec::make(cfg.problem, k, cfg.domain);
  const LoadQuadrature lq = load_quadrature(cfg);
  const QuadratureRule eq = quadrature_rule(QuadKind::triangle, cfg.quad_err);
  const std::vector<int> levels = cfg.levels();
  PreviousLevel prev;
  for (std::size_t idx = 0; idx < levels.size(); ++idx) {
    ConvergenceRecord rec;
    rec.k = k;
    rec.m = levels[idx];
    PreviousLevel cur;
    try {
      std::optional<ParentMap> parents;
      if (idx == 0) {
        cur.mesh = std::make_shared<const Mesh>(build_study_mesh(cfg, levels[idx]));
      } else {
        Refinement r = refine_red(*prev.mesh);
        cur.mesh = std::make_shared<const Mesh>(std::move(r.fine));
        parents = std::move(r.parents);
      }
      const Mesh& mesh = *cur.mesh;
      rec.dof = mesh.num_nodes();
      rec.h = cfg.mesh == MeshSource::structured ? 1.0 / levels[idx] : mesh.h_max();

      const LinearSystem sys = assemble_helmholtz(mesh, p, lq);
      cur.uh = solve(sys.A, sys.b, cfg.solver);
      const GradientRecovery recovery(cur.mesh);
      cur.guh = recovery.apply(cur.uh);

      double h1_abs = 0.0, h1_ref = 1.0;
      if (p.has_exact) {
        const ErrorBundle eb = error_bundle(mesh, cur.uh, p, eq);
        h1_abs = eb.h1_semi_err;
        h1_ref = eb.reference.h1;
        rec.rel_h1_fem = eb.rel_h1;
        rec.rel_l2_fem = eb.rel_l2;
        rec.rel_energy_fem = eb.rel_energy;
        rec.rel_grad_ppr = grad_error_l2(mesh, cur.guh, p, eq) / h1_ref;
        rec.rel_grad_ppr_interp = grad_error_l2(mesh, recovery.apply(nodal_interpolant(mesh, p)), p, eq) / h1_ref;
        cur.rel_h1 = rec.rel_h1_fem;
        cur.rel_ppr = rec.rel_grad_ppr;
      }
      if (parents && prev.ok) {
        const LevelPair pair(prev.mesh, cur.mesh, std::move(*parents));
        rec.eta = estimator_eta(pair, prev.guh, cur.guh, cur.uh);
        if (p.has_exact) {
          const std::vector<CVec2> rg = richardson(cur.guh, prolong<CVec2>(pair, prev.guh));
          rec.rel_grad_rppr = grad_error_l2(mesh, rg, p, eq) / h1_ref;
          rec.rel_grad_rfem =
              piecewise_grad_error_l2(mesh, richardson_element_gradients(pair, prev.uh, cur.uh), p, eq) / h1_ref;
          rec.effectivity = *rec.eta / h1_abs;
          if (prev.rel_h1) rec.order_fem = std::log2(*prev.rel_h1 / *rec.rel_h1_fem);
          if (prev.rel_ppr) rec.order_ppr = std::log2(*prev.rel_ppr / *rec.rel_grad_ppr);
        }
      }
      cur.ok = true;
    } catch (const std::exception& e) {
      rec.status = std::string("error: ") + e.what();
      cur.ok = false;
      if (!cur.mesh) cur.mesh = prev.mesh;
    }
    out.push_back(std::move(rec));
    if (!cur.mesh) break;
    prev = std::move(cur);
  }
}

}  // namespace

Mesh build_study_mesh(const StudyConfig& cfg, int level) {
  switch (cfg.mesh) {
    case MeshSource::structured:
      switch (cfg.domain) {
        case DomainTag::hexagon:
          return build_hexagon_mesh(level);
        case DomainTag::square:
          return build_square_mesh(level, SquareDomain::unit_square, cfg.diagonal);
        case DomainTag::lshape:
          return build_square_mesh(level, SquareDomain::l_shape, cfg.diagonal);
      }
      break;
    case MeshSource::delaunay:
    case MeshSource::file: {
      const std::vector<Point2> poly = domain_polygon(cfg.domain);
      Mesh mesh = cfg.mesh == MeshSource::delaunay ? delaunay_mesh(poly, cfg.target_h, cfg.seed)
                                                   : read_mesh_file(cfg.mesh_file);
      for (int r = 0; r < level; ++r) mesh = refine_red(mesh).fine;
      return mesh;
    }
  }
  throw ConfigError("unknown mesh source");
}

std::vector<ConvergenceRecord> run_refinement_study(const StudyConfig& cfg) {
  cfg.validate();
  std::vector<ConvergenceRecord> out;
  for (double k : cfg.k) run_levels(cfg, k, out);
  if (!cfg.out.empty()) write_csv_atomic(cfg.out, out);
  return out;
}

std::vector<ConvergenceRecord> run_estimator_only(const StudyConfig& cfg) {
  if (cfg.problem != ProblemKind::gaussian_source) throw ConfigError("estimate expects the gaussian source problem");
  return run_refinement_study(cfg);
}

std::vector<ConvergenceRecord> run_pollution_scan(const StudyConfig& cfg) {
  cfg.validate();
  if (cfg.problem != ProblemKind::bessel_exact) throw ConfigError("pollution scan needs the exact solution");
  const LoadQuadrature lq = load_quadrature(cfg);
  const QuadratureRule eq = quadrature_rule(QuadKind::triangle, cfg.quad_err);
  std::vector<ConvergenceRecord> out;
  for (double k : cfg.k) {
    ConvergenceRecord rec;
    rec.k = k;
    rec.m = std::max(1, static_cast<int>(std::lround(k / cfg.kh)));
    rec.h = 1.0 / rec.m;
    try {
      const ProblemSpec p = ProblemSpec::bessel(k, DomainTag::hexagon);
      auto mesh = std::make_shared<const Mesh>(build_hexagon_mesh(rec.m));
      rec.dof = mesh->num_nodes();
      const LinearSystem sys = assemble_helmholtz(*mesh, p, lq);
      const std::vector<Complex> uh = solve(sys.A, sys.b, cfg.solver);
      const GradientRecovery recovery(mesh);
      const std::vector<CVec2> guh = recovery.apply(uh);
      const ErrorBundle eb = error_bundle(*mesh, uh, p, eq);
      const double h1_ref = eb.reference.h1;
      rec.rel_h1_fem = eb.rel_h1;
      rec.rel_l2_fem = eb.rel_l2;
      rec.rel_energy_fem = eb.rel_energy;
      rec.rel_grad_ppr = grad_error_l2(*mesh, guh, p, eq) / h1_ref;
      rec.rel_grad_ppr_interp = grad_error_l2(*mesh, recovery.apply(nodal_interpolant(*mesh, p)), p, eq) / h1_ref;
      rec.rel_grad_diff = grad_diff_l2(*mesh, guh, uh) / h1_ref;
    } catch (const std::exception& e) {
      rec.status = std::string("error: ") + e.what();
    }
    out.push_back(std::move(rec));
  }
  if (!cfg.out.empty()) write_csv_atomic(cfg.out, out, true);
  return out;
}

bool any_failed(const std::vector<ConvergenceRecord>& records) {
  for (const auto& r : records) {
    if (r.status != "ok") return true;
  }
  return false;
}

}  // namespace helm
