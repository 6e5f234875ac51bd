#include "objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "csv.hpp"
#include "errors.hpp"

namespace ffda {

double penalized_cost(const AeroCoefficients& current, const AeroCoefficients& baseline,
                      const PenaltyConfig& config) {
  if (!(config.weight >= 0.0)) throw ConfigError("penalty weight must be non-negative");
  if (!(config.lift_floor > 0.0) || !(config.lift_floor <= 1.0)) {
    throw ConfigError("lift floor must lie in (0, 1]");
  }
  if (!(baseline.lift > 0.0) || !(baseline.drag > 0.0)) {
    throw ConfigError("baseline coefficients must be positive");
  }
  const double lift_ratio = current.lift / baseline.lift;
  return current.drag / baseline.drag +
         config.weight * std::max(0.0, config.lift_floor - lift_ratio);
}

namespace {

double vertical_of(const Vec3& p, MoveAxis vertical) {
  switch (vertical) {
    case MoveAxis::x: return p.x;
    case MoveAxis::y: return p.y;
    case MoveAxis::z: return p.z;
  }
  return p.z;
}

// Squared distance between horizontal projections (the two axes other
// than `vertical`).
double horizontal_sq(const Vec3& a, const Vec3& b, MoveAxis vertical) {
  double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  switch (vertical) {
    case MoveAxis::x: dx = 0.0; break;
    case MoveAxis::y: dy = 0.0; break;
    case MoveAxis::z: dz = 0.0; break;
  }
  return dx * dx + dy * dy + dz * dz;
}

}  // namespace

SurfaceTarget SurfaceTarget::from_mesh(const Mesh& mesh, MoveAxis vertical) {
  validate_mesh(mesh);
  SurfaceTarget target;
  target.vertical = vertical;
  const bool tagged = !mesh.surface_tag.empty();
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (!tagged || mesh.surface_tag[v]) target.points.push_back(mesh.vertices[v]);
  }
  if (target.points.empty()) {
    throw std::invalid_argument("surface target has no sample points");
  }
  return target;
}

double surface_mismatch(const Mesh& mesh, const SurfaceTarget& target) {
  validate_mesh(mesh);
  if (target.points.empty()) {
    throw std::invalid_argument("surface target has no sample points");
  }
  if (mesh.surface_tag.empty()) {
    throw std::invalid_argument("mesh has no surface-tagged vertices");
  }
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (!mesh.surface_tag[v]) continue;
    const Vec3& p = mesh.vertices[v];
    double best_h = std::numeric_limits<double>::infinity();
    double best_v = std::numeric_limits<double>::infinity();
    for (const Vec3& q : target.points) {
      const double h = horizontal_sq(p, q, target.vertical);
      if (h > best_h) continue;
      const double dv = vertical_of(p, target.vertical) - vertical_of(q, target.vertical);
      const double vsq = dv * dv;
      if (h < best_h || vsq < best_v) {
        best_h = h;
        best_v = vsq;
      }
    }
    total += best_v;
    ++count;
  }
  if (count == 0) throw std::invalid_argument("mesh has no surface-tagged vertices");
  return total / static_cast<double>(count);
}

std::function<double(const std::vector<double>&)> wing_fit_problem(
    const Mesh& initial, const LatticeConfig& lattice, const SurfaceTarget& target) {
  if (target.points.empty()) {
    throw std::invalid_argument("surface target has no sample points");
  }
  auto embedded = std::make_shared<const EmbeddedMesh>(embed_mesh(initial, lattice.bounds));
  auto dof = std::make_shared<const DofMap>(lattice.degrees, lattice.freeze);
  auto goal = std::make_shared<const SurfaceTarget>(target);
  const LatticeBounds bounds = lattice.bounds;
  return [embedded, dof, goal, bounds](const std::vector<double>& design) {
    return surface_mismatch(apply_deformation(*embedded, dof->decode(design, bounds)),
                            *goal);
  };
}

Mesh make_wing_mesh(int chord_points, int span_points) {
  if (chord_points < 2 || span_points < 2) {
    throw ConfigError("wing mesh needs at least 2 points per direction");
  }
  // Classical symmetric four-digit thickness polynomial, 12% thick.
  auto profile = [](double x) {
    return 5.0 * 0.12 *
           (0.2969 * std::sqrt(x) - 0.1260 * x - 0.3516 * x * x + 0.2843 * x * x * x -
            0.1036 * x * x * x * x);
  };
  Mesh mesh;
  for (int ic = 0; ic < chord_points; ++ic) {
    const double x = static_cast<double>(ic) / (chord_points - 1);
    for (int is = 0; is < span_points; ++is) {
      const double y = 2.0 * static_cast<double>(is) / (span_points - 1);
      mesh.vertices.push_back(Vec3{x, y, profile(x)});
    }
  }
  auto vid = [span_points](int ic, int is) { return ic * span_points + is; };
  for (int ic = 0; ic + 1 < chord_points; ++ic) {
    for (int is = 0; is + 1 < span_points; ++is) {
      mesh.triangles.push_back({vid(ic, is), vid(ic + 1, is), vid(ic + 1, is + 1)});
      mesh.triangles.push_back({vid(ic, is), vid(ic + 1, is + 1), vid(ic, is + 1)});
    }
  }
  mesh.tag_all_vertices();
  return mesh;
}

SurfaceTarget load_surface_target(const std::string& path) {
  auto has_suffix = [&path](const char* suffix) {
    const std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (has_suffix(".obj") || has_suffix(".OBJ")) {
    return SurfaceTarget::from_mesh(load_obj(path));
  }
  const CsvTable table = read_csv(path);
  const std::size_t cx = table.column("x", path);
  const std::size_t cy = table.column("y", path);
  const std::size_t cz = table.column("z", path);
  SurfaceTarget target;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path + ":row " + std::to_string(r + 1);
    target.points.push_back(Vec3{parse_number(row[cx], context),
                                 parse_number(row[cy], context),
                                 parse_number(row[cz], context)});
  }
  if (target.points.empty()) {
    throw std::invalid_argument(path + ": surface target has no sample points");
  }
  return target;
}

std::vector<CoefficientRow> load_coefficient_rows(const std::string& path) {
  const CsvTable table = read_csv(path);
  const std::size_t cl = table.column("label", path);
  const std::size_t cf = table.column("lift", path);
  const std::size_t cd = table.column("drag", path);
  std::vector<CoefficientRow> rows;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string context = path + ":row " + std::to_string(r + 1);
    rows.push_back({row[cl], AeroCoefficients{parse_number(row[cf], context),
                                              parse_number(row[cd], context)}});
  }
  if (rows.empty()) throw std::invalid_argument(path + ": no coefficient rows");
  return rows;
}

}  // namespace ffda
