#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mesh.hpp"

namespace ffda {

/// Axis-aligned deformation region.
struct LatticeBounds {
  Vec3 min;
  Vec3 max;

  bool operator==(const LatticeBounds& o) const { return min == o.min && max == o.max; }
};

void validate_bounds(const LatticeBounds& bounds);

struct LatticeDegrees {
  int i = 1;
  int j = 1;
  int k = 1;

  bool operator==(const LatticeDegrees& o) const = default;
  std::size_t control_count() const {
    return static_cast<std::size_t>(i + 1) * static_cast<std::size_t>(j + 1) *
           static_cast<std::size_t>(k + 1);
  }
};

/// Trivariate Bezier deformation lattice: its control-point displacements
/// define a smooth displacement field over the bounds. All-zero
/// displacements represent the identity.
struct FfdLattice {
  LatticeBounds bounds;
  LatticeDegrees degrees;
  std::vector<Vec3> displacements;  // (i*(nj+1)+j)*(nk+1)+k ordering

  FfdLattice() = default;
  FfdLattice(const LatticeBounds& b, const LatticeDegrees& d);

  std::size_t index(int ci, int cj, int ck) const;
  Vec3& at(int ci, int cj, int ck);
  const Vec3& at(int ci, int cj, int ck) const;
};

/// Regular control grid spanning the bounds: point (i,j,k) sits at the
/// fraction (i/n, j/m, k/l) of each extent.
std::vector<Vec3> initial_control_grid(const LatticeBounds& bounds,
                                       const LatticeDegrees& degrees);

/// Affine rescale of a point into lattice coordinates; nullopt when the
/// point falls outside the unit cube beyond a 1e-12 relative tolerance.
/// In-tolerance values are clamped to [0,1].
std::optional<Vec3> local_coords(const Vec3& point, const LatticeBounds& bounds);

/// Bernstein tensor-product displacement at local coordinates in [0,1]^3.
Vec3 deform_point(const FfdLattice& lattice, const Vec3& local);

/// Mesh with cached per-vertex lattice coordinates. Vertices outside the
/// bounds carry no coordinates and are never displaced.
struct EmbeddedMesh {
  Mesh reference;
  LatticeBounds bounds;
  std::vector<Vec3> local;           // valid where inside[v] != 0
  std::vector<std::uint8_t> inside;

  std::size_t inside_count() const;
};

EmbeddedMesh embed_mesh(const Mesh& mesh, const LatticeBounds& bounds);

/// Displaces every inside vertex by the lattice field; outside vertices and
/// connectivity are copied unchanged. The lattice bounds must equal the
/// bounds the mesh was embedded with.
Mesh apply_deformation(const EmbeddedMesh& embedded, const FfdLattice& lattice);

enum class PlaneAxis { i, j, k };

struct FrozenPlane {
  PlaneAxis axis = PlaneAxis::i;
  int index = 0;
};

enum class MoveAxis { x, y, z };

/// Which control points may move and along which mesh axis. The default
/// freezes the first and last chordwise planes (i = 0 and i = n_i) and
/// moves the rest vertically (z).
struct FreezeSpec {
  std::vector<FrozenPlane> frozen_planes;
  MoveAxis axis = MoveAxis::z;

  static FreezeSpec defaults(const LatticeDegrees& degrees);
};

/// Maps between the optimizer's design vector and the sparse displacement
/// array: one design component per non-frozen control point, applied along
/// the movement axis.
class DofMap {
public:
  DofMap(const LatticeDegrees& degrees, const FreezeSpec& spec);

  std::size_t count() const { return free_controls_.size(); }
  const LatticeDegrees& degrees() const { return degrees_; }
  MoveAxis axis() const { return axis_; }
  /// Lattice (i,j,k) triple of each design component, in design order.
  const std::vector<std::array<int, 3>>& free_controls() const { return free_controls_; }

  /// Writes the design into a fresh lattice (zero displacement elsewhere).
  FfdLattice decode(const std::vector<double>& design, const LatticeBounds& bounds) const;
  /// Left inverse of decode: reads the movement-axis component back out.
  std::vector<double> encode(const FfdLattice& lattice) const;

private:
  LatticeDegrees degrees_;
  MoveAxis axis_;
  std::vector<std::array<int, 3>> free_controls_;
};

struct RebaselineResult {
  EmbeddedMesh embedded;   // deformed positions with fresh local coordinates
  FfdLattice lattice;      // same bounds and degrees, zero displacements
  std::size_t escaped = 0; // vertices that left the bounds and are now fixed
};

/// Absorbs the current deformation into the reference mesh and resets the
/// control displacements, so the optimization can restart from a regular
/// control volume without changing the shape.
RebaselineResult rebaseline(const EmbeddedMesh& embedded, const FfdLattice& lattice);

}  // namespace ffda
