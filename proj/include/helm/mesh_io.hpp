#pragma once

#include <iosfwd>
#include <string>

#include "helm/mesh.hpp"

namespace helm {

/// Plain-text mesh format, ASCII with LF line endings and 0-based indices:
///
///   .node
///   <count>
///   <index> <x> <y> <boundary_flag>      (one line per node)
///   .ele
///   <count>
///   <index> <v0> <v1> <v2>               (one line per triangle)
///
/// Blank lines and lines starting with '#' are ignored on input.
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);

void write_mesh_file(const std::string& path, const Mesh& mesh);
Mesh read_mesh_file(const std::string& path);

}  // namespace helm
