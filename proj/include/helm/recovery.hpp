#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "helm/fields.hpp"

namespace helm {

class PatchDegenerate : public std::runtime_error {
 public:
  PatchDegenerate(int node, const std::string& what) : std::runtime_error(what), node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

/// Sampling nodes for the quadratic fit at node z. nodes[0] == z.
struct Patch {
  int center = -1;
  std::vector<int> nodes;
  /// Largest distance from z to a sampling node.
  double scale = 0.0;
  int rings_used = 0;
};

/// Grows whole element rings around z until there are at least six nodes
/// and the scaled quadratic Vandermonde has full rank (smallest singular
/// value >= 1e-10 largest). Gives up after four rings.
Patch build_patch(const Mesh& mesh, int z);

/// Polynomial preserving recovery as a linear operator: for every node z
/// the recovered gradient is sum_j w_zj u(z_j) with weights from the
/// pseudo-inverse of the patch Vandermonde.
class GradientRecovery {
 public:
  explicit GradientRecovery(std::shared_ptr<const Mesh> mesh);

  const Mesh& mesh() const { return *mesh_; }
  const Patch& patch(int z) const { return patches_[static_cast<std::size_t>(z)]; }

  VectorNodalField apply(const NodalField& field) const;
  std::vector<CVec2> apply(const std::vector<Complex>& values) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<Patch> patches_;
  std::vector<int> offset_;
  std::vector<double> wx_, wy_;
};

/// One-shot convenience wrapper around GradientRecovery.
VectorNodalField recover_gradient(const NodalField& field);

}  // namespace helm
