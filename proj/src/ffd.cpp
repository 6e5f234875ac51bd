#include "ffd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bernstein.hpp"
#include "errors.hpp"

namespace ffda {

void validate_bounds(const LatticeBounds& bounds) {
  const double dx = bounds.max.x - bounds.min.x;
  const double dy = bounds.max.y - bounds.min.y;
  const double dz = bounds.max.z - bounds.min.z;
  if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0)) {
    throw ConfigError("lattice bounds must have positive extent on every axis");
  }
}

static void validate_degrees(const LatticeDegrees& degrees) {
  if (degrees.i < 1 || degrees.j < 1 || degrees.k < 1) {
    throw ConfigError("lattice degrees must be at least 1 on every axis");
  }
  if (degrees.i > kMaxBernsteinDegree || degrees.j > kMaxBernsteinDegree ||
      degrees.k > kMaxBernsteinDegree) {
    throw ConfigError("lattice degree exceeds supported maximum");
  }
}

FfdLattice::FfdLattice(const LatticeBounds& b, const LatticeDegrees& d)
    : bounds(b), degrees(d) {
  validate_bounds(bounds);
  validate_degrees(degrees);
  displacements.assign(degrees.control_count(), Vec3{});
}

std::size_t FfdLattice::index(int ci, int cj, int ck) const {
  if (ci < 0 || ci > degrees.i || cj < 0 || cj > degrees.j || ck < 0 || ck > degrees.k) {
    throw std::out_of_range("lattice control index out of range");
  }
  return (static_cast<std::size_t>(ci) * (degrees.j + 1) + cj) * (degrees.k + 1) + ck;
}

Vec3& FfdLattice::at(int ci, int cj, int ck) { return displacements[index(ci, cj, ck)]; }

const Vec3& FfdLattice::at(int ci, int cj, int ck) const {
  return displacements[index(ci, cj, ck)];
}

std::vector<Vec3> initial_control_grid(const LatticeBounds& bounds,
                                       const LatticeDegrees& degrees) {
  validate_bounds(bounds);
  validate_degrees(degrees);
  std::vector<Vec3> grid;
  grid.reserve(degrees.control_count());
  for (int ci = 0; ci <= degrees.i; ++ci) {
    const double fx = static_cast<double>(ci) / degrees.i;
    for (int cj = 0; cj <= degrees.j; ++cj) {
      const double fy = static_cast<double>(cj) / degrees.j;
      for (int ck = 0; ck <= degrees.k; ++ck) {
        const double fz = static_cast<double>(ck) / degrees.k;
        grid.push_back(Vec3{bounds.min.x + fx * (bounds.max.x - bounds.min.x),
                            bounds.min.y + fy * (bounds.max.y - bounds.min.y),
                            bounds.min.z + fz * (bounds.max.z - bounds.min.z)});
      }
    }
  }
  return grid;
}

namespace {

// Rescales one coordinate; accepts values up to a relative tolerance
// outside [min, max] and clamps them onto the boundary.
std::optional<double> local_axis(double value, double lo, double hi) {
  const double span = hi - lo;
  const double t = (value - lo) / span;
  const double tol = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi))) / span;
  if (t < -tol || t > 1.0 + tol) return std::nullopt;
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

std::optional<Vec3> local_coords(const Vec3& point, const LatticeBounds& bounds) {
  validate_bounds(bounds);
  const auto tx = local_axis(point.x, bounds.min.x, bounds.max.x);
  if (!tx) return std::nullopt;
  const auto ty = local_axis(point.y, bounds.min.y, bounds.max.y);
  if (!ty) return std::nullopt;
  const auto tz = local_axis(point.z, bounds.min.z, bounds.max.z);
  if (!tz) return std::nullopt;
  return Vec3{*tx, *ty, *tz};
}

Vec3 deform_point(const FfdLattice& lattice, const Vec3& local) {
  const auto bi = basis_vector(lattice.degrees.i, local.x);
  const auto bj = basis_vector(lattice.degrees.j, local.y);
  const auto bk = basis_vector(lattice.degrees.k, local.z);
  Vec3 sum{};
  std::size_t idx = 0;
  for (int ci = 0; ci <= lattice.degrees.i; ++ci) {
    for (int cj = 0; cj <= lattice.degrees.j; ++cj) {
      const double wij = bi[ci] * bj[cj];
      for (int ck = 0; ck <= lattice.degrees.k; ++ck, ++idx) {
        const double w = wij * bk[ck];
        const Vec3& d = lattice.displacements[idx];
        sum.x += w * d.x;
        sum.y += w * d.y;
        sum.z += w * d.z;
      }
    }
  }
  return sum;
}

std::size_t EmbeddedMesh::inside_count() const {
  std::size_t n = 0;
  for (auto flag : inside) n += flag != 0;
  return n;
}

EmbeddedMesh embed_mesh(const Mesh& mesh, const LatticeBounds& bounds) {
  validate_mesh(mesh);
  validate_bounds(bounds);
  EmbeddedMesh out;
  out.reference = mesh;
  out.bounds = bounds;
  out.local.assign(mesh.vertices.size(), Vec3{});
  out.inside.assign(mesh.vertices.size(), 0);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (auto lc = local_coords(mesh.vertices[v], bounds)) {
      out.local[v] = *lc;
      out.inside[v] = 1;
    }
  }
  return out;
}

Mesh apply_deformation(const EmbeddedMesh& embedded, const FfdLattice& lattice) {
  if (!(lattice.bounds == embedded.bounds)) {
    throw ConfigError("lattice bounds do not match the embedded mesh");
  }
  Mesh out = embedded.reference;
  for (std::size_t v = 0; v < out.vertices.size(); ++v) {
    if (!embedded.inside[v]) continue;
    const Vec3 d = deform_point(lattice, embedded.local[v]);
    out.vertices[v].x += d.x;
    out.vertices[v].y += d.y;
    out.vertices[v].z += d.z;
  }
  return out;
}

FreezeSpec FreezeSpec::defaults(const LatticeDegrees& degrees) {
  FreezeSpec spec;
  spec.frozen_planes = {{PlaneAxis::i, 0}, {PlaneAxis::i, degrees.i}};
  spec.axis = MoveAxis::z;
  return spec;
}

DofMap::DofMap(const LatticeDegrees& degrees, const FreezeSpec& spec)
    : degrees_(degrees), axis_(spec.axis) {
  validate_degrees(degrees);
  for (const auto& plane : spec.frozen_planes) {
    const int limit = plane.axis == PlaneAxis::i   ? degrees.i
                      : plane.axis == PlaneAxis::j ? degrees.j
                                                   : degrees.k;
    if (plane.index < 0 || plane.index > limit) {
      throw ConfigError("frozen plane index out of range");
    }
  }
  auto frozen = [&spec](int ci, int cj, int ck) {
    for (const auto& plane : spec.frozen_planes) {
      const int along = plane.axis == PlaneAxis::i   ? ci
                        : plane.axis == PlaneAxis::j ? cj
                                                     : ck;
      if (along == plane.index) return true;
    }
    return false;
  };
  for (int ci = 0; ci <= degrees.i; ++ci) {
    for (int cj = 0; cj <= degrees.j; ++cj) {
      for (int ck = 0; ck <= degrees.k; ++ck) {
        if (!frozen(ci, cj, ck)) free_controls_.push_back({ci, cj, ck});
      }
    }
  }
  if (free_controls_.empty()) {
    throw ConfigError("freeze specification leaves no movable control points");
  }
}

FfdLattice DofMap::decode(const std::vector<double>& design,
                          const LatticeBounds& bounds) const {
  if (design.size() != free_controls_.size()) {
    throw ConfigError("design vector length does not match the degree-of-freedom count");
  }
  FfdLattice lattice(bounds, degrees_);
  for (std::size_t d = 0; d < design.size(); ++d) {
    const auto& [ci, cj, ck] = free_controls_[d];
    Vec3& disp = lattice.at(ci, cj, ck);
    switch (axis_) {
      case MoveAxis::x: disp.x = design[d]; break;
      case MoveAxis::y: disp.y = design[d]; break;
      case MoveAxis::z: disp.z = design[d]; break;
    }
  }
  return lattice;
}

std::vector<double> DofMap::encode(const FfdLattice& lattice) const {
  if (!(lattice.degrees == degrees_)) {
    throw ConfigError("lattice degrees do not match the degree-of-freedom map");
  }
  std::vector<double> design(free_controls_.size(), 0.0);
  for (std::size_t d = 0; d < design.size(); ++d) {
    const auto& [ci, cj, ck] = free_controls_[d];
    const Vec3& disp = lattice.at(ci, cj, ck);
    switch (axis_) {
      case MoveAxis::x: design[d] = disp.x; break;
      case MoveAxis::y: design[d] = disp.y; break;
      case MoveAxis::z: design[d] = disp.z; break;
    }
  }
  return design;
}

RebaselineResult rebaseline(const EmbeddedMesh& embedded, const FfdLattice& lattice) {
  RebaselineResult out;
  out.lattice = FfdLattice(lattice.bounds, lattice.degrees);
  out.embedded = embed_mesh(apply_deformation(embedded, lattice), embedded.bounds);
  for (std::size_t v = 0; v < embedded.inside.size(); ++v) {
    if (embedded.inside[v] && !out.embedded.inside[v]) ++out.escaped;
  }
  return out;
}

}  // namespace ffda
