#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ffda {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

/// Unstructured triangle mesh. surface_tag marks the vertices that belong
/// to the design surface; an empty vector means no vertex is tagged.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::uint8_t> surface_tag;

  void tag_all_vertices();
};

/// Throws std::invalid_argument on out-of-range or repeated triangle indices.
void validate_mesh(const Mesh& mesh);

/// Reads a Wavefront OBJ with `v x y z` and triangular `f i j k` records
/// (1-based indices; `i/j/k` attribute suffixes are ignored). Other record
/// types are skipped. Throws IoError on unreadable files and
/// std::invalid_argument on malformed geometry, both with path context.
Mesh load_obj(const std::string& path);

/// Writes vertices and faces with full double precision, LF line endings.
void save_obj(const Mesh& mesh, const std::string& path);

}  // namespace ffda
