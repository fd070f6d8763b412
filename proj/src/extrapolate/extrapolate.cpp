#include <stdexcept>

#include "helm/extrapolate.hpp"
#include "helm/metrics.hpp"
#include "helm/simd/kernels.hpp"

namespace helm {

static_assert(sizeof(CVec2) == 2 * sizeof(Complex), "CVec2 must be two packed complex values");

LevelPair::LevelPair(std::shared_ptr<const Mesh> c, std::shared_ptr<const Mesh> f, ParentMap p)
    : coarse(std::move(c)), fine(std::move(f)), parents(std::move(p)) {
  if (!coarse || !fine) throw std::invalid_argument("level pair needs both meshes");
  check_ancestry(*coarse, *fine, parents);
}

NodalField prolong(const LevelPair& pair, const NodalField& coarse) {
  return NodalField(pair.fine, prolong<Complex>(pair, coarse.values()));
}

VectorNodalField prolong(const LevelPair& pair, const VectorNodalField& coarse) {
  return VectorNodalField(pair.fine, prolong<CVec2>(pair, coarse.values()));
}

std::vector<Complex> richardson(std::span<const Complex> fine, std::span<const Complex> prolonged_coarse) {
  if (fine.size() != prolonged_coarse.size()) throw std::invalid_argument("richardson: length mismatch");
  std::vector<Complex> out(fine.size());
  simd::kernels().clincomb(fine.size(), 4.0 / 3.0, fine.data(), -1.0 / 3.0, prolonged_coarse.data(), out.data());
  return out;
}

std::vector<CVec2> richardson(std::span<const CVec2> fine, std::span<const CVec2> prolonged_coarse) {
  if (fine.size() != prolonged_coarse.size()) throw std::invalid_argument("richardson: length mismatch");
  std::vector<CVec2> out(fine.size());
  simd::kernels().clincomb(2 * fine.size(), 4.0 / 3.0, reinterpret_cast<const Complex*>(fine.data()), -1.0 / 3.0,
                           reinterpret_cast<const Complex*>(prolonged_coarse.data()),
                           reinterpret_cast<Complex*>(out.data()));
  return out;
}

std::vector<CVec2> richardson_element_gradients(const LevelPair& pair, std::span<const Complex> coarse_solution,
                                                std::span<const Complex> fine_solution) {
  const std::vector<CVec2> coarse = element_gradients(*pair.coarse, p1_geometry(*pair.coarse), coarse_solution);
  const std::vector<CVec2> fine = element_gradients(*pair.fine, p1_geometry(*pair.fine), fine_solution);
  std::vector<CVec2> out(fine.size());
  for (std::size_t t = 0; t < fine.size(); ++t) {
    const CVec2& parent = coarse[static_cast<std::size_t>(pair.parents.fine_to_coarse_triangle[t])];
    out[t] = (1.0 / 3.0) * (4.0 * fine[t] - parent);
  }
  return out;
}

double estimator_eta(const LevelPair& pair, std::span<const CVec2> coarse_recovered,
                     std::span<const CVec2> fine_recovered, std::span<const Complex> fine_solution) {
  const std::vector<CVec2> prolonged = prolong<CVec2>(pair, coarse_recovered);
  const std::vector<CVec2> rg = richardson(fine_recovered, prolonged);
  return grad_diff_l2(*pair.fine, rg, fine_solution);
}

}  // namespace helm
