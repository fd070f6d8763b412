#pragma once

#include <memory>
#include <span>
#include <vector>

#include "helm/assembly.hpp"
#include "helm/fields.hpp"

namespace helm {

/// A coarse mesh and its red refinement.
struct LevelPair {
  std::shared_ptr<const Mesh> coarse;
  std::shared_ptr<const Mesh> fine;
  ParentMap parents;

  /// Checks the ancestry and throws MeshError on mismatch.
  LevelPair(std::shared_ptr<const Mesh> coarse, std::shared_ptr<const Mesh> fine, ParentMap parents);
};

/// P1 interpolation of a coarse field onto the fine nodes.
template <class T>
std::vector<T> prolong(const LevelPair& pair, std::span<const T> coarse) {
  if (coarse.size() != pair.coarse->num_nodes()) throw std::invalid_argument("coarse field length mismatch");
  const auto& origin = pair.parents.fine_node_origin;
  std::vector<T> out(origin.size());
  for (std::size_t i = 0; i < origin.size(); ++i) {
    const NodeOrigin& o = origin[i];
    if (o.is_coarse_node()) {
      out[i] = coarse[static_cast<std::size_t>(o.a)];
    } else {
      out[i] = 0.5 * (coarse[static_cast<std::size_t>(o.a)] + coarse[static_cast<std::size_t>(o.b)]);
    }
  }
  return out;
}

NodalField prolong(const LevelPair& pair, const NodalField& coarse);
VectorNodalField prolong(const LevelPair& pair, const VectorNodalField& coarse);

/// Nodewise (4 fine - coarse) / 3 with both fields on the fine mesh.
std::vector<Complex> richardson(std::span<const Complex> fine, std::span<const Complex> prolonged_coarse);
std::vector<CVec2> richardson(std::span<const CVec2> fine, std::span<const CVec2> prolonged_coarse);

/// Richardson combination of raw P1 gradients on each fine triangle, using
/// the constant gradient of its coarse parent.
std::vector<CVec2> richardson_element_gradients(const LevelPair& pair, std::span<const Complex> coarse_solution,
                                                std::span<const Complex> fine_solution);

/// eta = || R G_h u_h - grad u_h ||_0 on the fine mesh, with R applied to
/// the fine and prolonged coarse recovered gradients.
double estimator_eta(const LevelPair& pair, std::span<const CVec2> coarse_recovered,
                     std::span<const CVec2> fine_recovered, std::span<const Complex> fine_solution);

}  // namespace helm
