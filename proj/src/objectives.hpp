#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ffd.hpp"
#include "mesh.hpp"

namespace ffda {

/// Flow coefficients are always supplied (file, table, or test fixture);
/// nothing in this library computes them.
struct AeroCoefficients {
  double lift = 0.0;
  double drag = 0.0;
};

struct PenaltyConfig {
  double weight = 1e4;
  double lift_floor = 0.999;
};

/// drag/drag0 plus a one-sided penalty when lift/lift0 drops below the
/// floor: weight * max(0, lift_floor - lift/lift0).
double penalized_cost(const AeroCoefficients& current, const AeroCoefficients& baseline,
                      const PenaltyConfig& config = {});

/// Point cloud standing in for a target surface. `vertical` selects the
/// mismatch axis; the other two axes form the horizontal plane used for
/// correspondence.
struct SurfaceTarget {
  std::vector<Vec3> points;
  MoveAxis vertical = MoveAxis::z;

  /// Samples the tagged vertices of a mesh (all vertices when untagged).
  static SurfaceTarget from_mesh(const Mesh& mesh, MoveAxis vertical = MoveAxis::z);
};

/// Mean squared vertical distance from each tagged vertex to the target
/// point nearest in the horizontal plane (ties resolved toward the smaller
/// vertical distance, so a vertex lying exactly on a target point scores 0).
double surface_mismatch(const Mesh& mesh, const SurfaceTarget& target);

struct LatticeConfig {
  LatticeBounds bounds;
  LatticeDegrees degrees;
  FreezeSpec freeze;
};

/// Design vector -> decode to control displacements -> deform -> mismatch.
/// Captures immutable copies of the problem data; safe to call repeatedly.
std::function<double(const std::vector<double>&)> wing_fit_problem(
    const Mesh& initial, const LatticeConfig& lattice, const SurfaceTarget& target);

/// Structured single-sheet wing: symmetric-profile upper surface with unit
/// chord (x) and a span of 2 (y), triangulated row by row.
Mesh make_wing_mesh(int chord_points = 25, int span_points = 9);

/// CSV with columns x,y,z (or an OBJ, chosen by extension) -> target points.
SurfaceTarget load_surface_target(const std::string& path);

struct CoefficientRow {
  std::string label;
  AeroCoefficients coefficients;
};

/// CSV with columns label,lift,drag; first row is the baseline.
std::vector<CoefficientRow> load_coefficient_rows(const std::string& path);

}  // namespace ffda
