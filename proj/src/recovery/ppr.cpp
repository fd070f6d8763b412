#include <Eigen/SVD>
#include <algorithm>
#include <string>

#include "helm/recovery.hpp"

namespace helm {
namespace {

constexpr int kMaxRings = 4;
constexpr double kRankTol = 1e-10;

using Vandermonde = Eigen::Matrix<double, Eigen::Dynamic, 6>;

Vandermonde scaled_vandermonde(const Mesh& mesh, const Patch& patch) {
  const Point2 z = mesh.node(patch.center);
  Vandermonde v(static_cast<Eigen::Index>(patch.nodes.size()), 6);
  for (std::size_t j = 0; j < patch.nodes.size(); ++j) {
    const Point2 d = (1.0 / patch.scale) * (mesh.node(patch.nodes[j]) - z);
    v.row(static_cast<Eigen::Index>(j)) << 1.0, d.x, d.y, d.x * d.x, d.x * d.y, d.y * d.y;
  }
  return v;
}

bool full_rank(const Vandermonde& v) {
  if (v.rows() < 6) return false;
  const Eigen::JacobiSVD<Vandermonde> svd(v);
  const auto& s = svd.singularValues();
  return s(5) >= kRankTol * s(0);
}

}  // namespace

Patch build_patch(const Mesh& mesh, int z) {
  if (z < 0 || static_cast<std::size_t>(z) >= mesh.num_nodes()) throw std::out_of_range("node index out of range");
  Patch patch;
  patch.center = z;
  std::vector<int> members{z};
  std::vector<char> in(mesh.num_nodes(), 0);
  in[static_cast<std::size_t>(z)] = 1;
  std::vector<int> frontier{z};
  for (int ring = 1; ring <= kMaxRings; ++ring) {
    std::vector<int> added;
    for (int node : frontier) {
      for (int t : mesh.node_triangles(node)) {
        for (int v : mesh.triangle(t)) {
          if (in[static_cast<std::size_t>(v)]) continue;
          in[static_cast<std::size_t>(v)] = 1;
          added.push_back(v);
        }
      }
    }
    members.insert(members.end(), added.begin(), added.end());
    frontier = std::move(added);
    patch.rings_used = ring;
    patch.nodes.assign(members.begin() + 1, members.end());
    std::sort(patch.nodes.begin(), patch.nodes.end());
    patch.nodes.insert(patch.nodes.begin(), z);
    patch.scale = 0.0;
    for (int v : patch.nodes) patch.scale = std::max(patch.scale, distance(mesh.node(v), mesh.node(z)));
    if (patch.nodes.size() >= 6 && full_rank(scaled_vandermonde(mesh, patch))) return patch;
    if (frontier.empty()) break;
  }
  throw PatchDegenerate(z, "no unisolvent quadratic patch at node " + std::to_string(z));
}

GradientRecovery::GradientRecovery(std::shared_ptr<const Mesh> mesh) : mesh_(std::move(mesh)) {
  if (!mesh_) throw std::invalid_argument("recovery needs a mesh");
  const std::size_t nn = mesh_->num_nodes();
  patches_.reserve(nn);
  offset_.assign(nn + 1, 0);
  for (std::size_t z = 0; z < nn; ++z) {
    Patch patch = build_patch(*mesh_, static_cast<int>(z));
    const Vandermonde v = scaled_vandermonde(*mesh_, patch);
    const Eigen::JacobiSVD<Vandermonde> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
    // Rows 1 and 2 of the pseudo-inverse V S^-1 U^T give the linear
    // coefficients, i.e. the gradient at z in scaled coordinates.
    const auto& s = svd.singularValues();
    const Eigen::Matrix<double, 6, 6> vmat = svd.matrixV();
    const auto& u = svd.matrixU();
    for (Eigen::Index j = 0; j < v.rows(); ++j) {
      double gx = 0.0, gy = 0.0;
      for (int c = 0; c < 6; ++c) {
        const double f = u(j, c) / s(c);
        gx += vmat(1, c) * f;
        gy += vmat(2, c) * f;
      }
      wx_.push_back(gx / patch.scale);
      wy_.push_back(gy / patch.scale);
    }
    offset_[z + 1] = offset_[z] + static_cast<int>(patch.nodes.size());
    patches_.push_back(std::move(patch));
  }
}

std::vector<CVec2> GradientRecovery::apply(const std::vector<Complex>& values) const {
  if (values.size() != mesh_->num_nodes()) throw std::invalid_argument("field length differs from node count");
  std::vector<CVec2> out(values.size());
  for (std::size_t z = 0; z < values.size(); ++z) {
    const auto& nodes = patches_[z].nodes;
    CVec2 g;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const Complex u = values[static_cast<std::size_t>(nodes[j])];
      const std::size_t w = static_cast<std::size_t>(offset_[z]) + j;
      g.x += wx_[w] * u;
      g.y += wy_[w] * u;
    }
    out[z] = g;
  }
  return out;
}

VectorNodalField GradientRecovery::apply(const NodalField& field) const {
  if (&field.mesh() != mesh_.get()) throw std::invalid_argument("field lives on a different mesh");
  return VectorNodalField(mesh_, apply(field.values()));
}

VectorNodalField recover_gradient(const NodalField& field) {
  return GradientRecovery(field.mesh_ptr()).apply(field);
}

}  // namespace helm
