#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "helm/mesh.hpp"

namespace helm {

/// Continuous piecewise-linear function given by its nodal values.
template <class T>
class BasicNodalField {
 public:
  BasicNodalField() = default;
  BasicNodalField(std::shared_ptr<const Mesh> mesh, std::vector<T> values)
      : mesh_(std::move(mesh)), values_(std::move(values)) {
    if (!mesh_) throw std::invalid_argument("field needs a mesh");
    if (values_.size() != mesh_->num_nodes()) throw std::invalid_argument("field length differs from node count");
  }
  explicit BasicNodalField(std::shared_ptr<const Mesh> mesh)
      : BasicNodalField(mesh, std::vector<T>(mesh ? mesh->num_nodes() : 0)) {}

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }
  const T& operator[](std::size_t i) const { return values_[i]; }
  T& operator[](std::size_t i) { return values_[i]; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<T> values_;
};

using NodalField = BasicNodalField<Complex>;
using VectorNodalField = BasicNodalField<CVec2>;

/// Value of the P1 function inside triangle `tri` at the given barycentric
/// coordinates (weights of the triangle's vertices in stored order).
template <class T>
T eval_p1(const Mesh& mesh, const std::vector<T>& values, int tri, const std::array<double, 3>& bary) {
  if (tri < 0 || static_cast<std::size_t>(tri) >= mesh.num_triangles()) {
    throw std::out_of_range("triangle index out of range");
  }
  const auto& v = mesh.triangle(tri);
  T out = bary[0] * values[static_cast<std::size_t>(v[0])];
  out += bary[1] * values[static_cast<std::size_t>(v[1])];
  out += bary[2] * values[static_cast<std::size_t>(v[2])];
  return out;
}

template <class T>
T eval_p1(const BasicNodalField<T>& field, int tri, const std::array<double, 3>& bary) {
  return eval_p1(field.mesh(), field.values(), tri, bary);
}

}  // namespace helm
