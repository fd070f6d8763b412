#include <fstream>
#include <iomanip>
#include <sstream>

#include "helm/mesh_io.hpp"

namespace helm {
namespace {

// Next line that is neither blank nor a comment.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    return true;
  }
  return false;
}

std::size_t read_count(std::istream& in, const char* section) {
  std::string line;
  if (!next_line(in, line) || line.rfind(section, 0) != 0) {
    throw MeshError(std::string("mesh file: expected section ") + section);
  }
  if (!next_line(in, line)) throw MeshError("mesh file: missing count");
  std::istringstream ss(line);
  long long count = -1;
  if (!(ss >> count) || count < 0) throw MeshError("mesh file: bad count line '" + line + "'");
  return static_cast<std::size_t>(count);
}

}  // namespace

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << std::setprecision(17);
  out << ".node\n" << mesh.num_nodes() << '\n';
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    const Point2& p = mesh.nodes()[i];
    out << i << ' ' << p.x << ' ' << p.y << ' ' << (mesh.is_boundary_node(static_cast<int>(i)) ? 1 : 0) << '\n';
  }
  out << ".ele\n" << mesh.num_triangles() << '\n';
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangles()[t];
    out << t << ' ' << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
}

Mesh read_mesh(std::istream& in) {
  std::string line;
  const std::size_t nn = read_count(in, ".node");
  std::vector<Point2> nodes(nn);
  for (std::size_t i = 0; i < nn; ++i) {
    if (!next_line(in, line)) throw MeshError("mesh file: truncated node section");
    std::istringstream ss(line);
    long long idx = -1;
    int flag = 0;
    Point2 p;
    if (!(ss >> idx >> p.x >> p.y >> flag)) throw MeshError("mesh file: bad node line '" + line + "'");
    if (idx < 0 || static_cast<std::size_t>(idx) >= nn) throw MeshError("mesh file: node index out of range");
    nodes[static_cast<std::size_t>(idx)] = p;
  }
  const std::size_t nt = read_count(in, ".ele");
  std::vector<Mesh::Triangle> tris(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    if (!next_line(in, line)) throw MeshError("mesh file: truncated element section");
    std::istringstream ss(line);
    long long idx = -1;
    Mesh::Triangle v{};
    if (!(ss >> idx >> v[0] >> v[1] >> v[2])) throw MeshError("mesh file: bad element line '" + line + "'");
    if (idx < 0 || static_cast<std::size_t>(idx) >= nt) throw MeshError("mesh file: element index out of range");
    tris[static_cast<std::size_t>(idx)] = v;
  }
  return Mesh::from_triangles(std::move(nodes), std::move(tris));
}

void write_mesh_file(const std::string& path, const Mesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MeshError("cannot open " + path + " for writing");
  write_mesh(out, mesh);
  if (!out) throw MeshError("failed writing " + path);
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MeshError("cannot open " + path);
  return read_mesh(in);
}

}  // namespace helm
