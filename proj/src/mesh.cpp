#include "mesh.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace ffda {

void Mesh::tag_all_vertices() {
  surface_tag.assign(vertices.size(), 1);
}

void validate_mesh(const Mesh& mesh) {
  const int count = static_cast<int>(mesh.vertices.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int idx : tri)
      if (idx < 0 || idx >= count)
        throw std::invalid_argument("mesh: triangle " + std::to_string(t) +
                                    " has out-of-range vertex index");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw std::invalid_argument("mesh: triangle " + std::to_string(t) +
                                  " is degenerate (repeated index)");
  }
  if (!mesh.surface_tag.empty() && mesh.surface_tag.size() != mesh.vertices.size())
    throw std::invalid_argument("mesh: surface tag length differs from vertex count");
}

namespace {

// "12/3/4" -> 12; OBJ texture/normal sub-indices are not used here.
int parse_face_index(const std::string& token, const std::string& path, int line_no) {
  std::size_t end = token.find('/');
  const std::string head = token.substr(0, end);
  int value = 0;
  try {
    value = std::stoi(head);
  } catch (const std::exception&) {
    throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                ": bad face index '" + token + "'");
  }
  if (value <= 0)
    throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                ": face indices must be positive (1-based)");
  return value - 1;
}

}  // namespace

Mesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file: " + path);

  Mesh mesh;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind) || kind.empty() || kind[0] == '#') continue;
    if (kind == "v") {
      Vec3 v;
      if (!(ss >> v.x >> v.y >> v.z))
        throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                    ": vertex needs three coordinates");
      mesh.vertices.push_back(v);
    } else if (kind == "f") {
      std::vector<std::string> tokens;
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (tokens.size() != 3)
        throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                    ": only triangular faces are supported");
      mesh.triangles.push_back({parse_face_index(tokens[0], path, line_no),
                                parse_face_index(tokens[1], path, line_no),
                                parse_face_index(tokens[2], path, line_no)});
    }
    // vn/vt/usemtl/g/... are ignored.
  }
  try {
    validate_mesh(mesh);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return mesh;
}

void save_obj(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF on every platform
  if (!out) throw IoError("cannot open mesh file for writing: " + path);
  char buf[128];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const auto& tri : mesh.triangles) {
    std::snprintf(buf, sizeof(buf), "f %d %d %d\n", tri[0] + 1, tri[1] + 1, tri[2] + 1);
    out << buf;
  }
  if (!out) throw IoError("failed while writing mesh file: " + path);
}

}  // namespace ffda
