#pragma once

#include <random>
#include <string>
#include <vector>

#include "config.hpp"
#include "ffd.hpp"
#include "inverse2d.hpp"
#include "mesh.hpp"
#include "nelder_mead.hpp"
#include "objectives.hpp"

namespace ffda {

struct RunOutput {
  std::vector<std::string> files;  // everything written, in write order
  std::vector<std::string> notes;  // human-readable result lines for the CLI
};

/// Runs the mode named by run.mode and writes its artifacts (plus a
/// canonical config_echo.ini) into the output directory. All randomness
/// derives from run.seed, and all numeric output uses a fixed 17-digit
/// rendering, so identical configurations rerun byte-identically.
RunOutput execute_run(const Config& config);

/// Uniform double in [0, 1) built from the top 53 bits of the generator
/// output; unlike std::uniform_real_distribution this is identical on
/// every platform.
double unit_double(std::mt19937_64& rng);

/// Lattice geometry from the [lattice] section. Bounds may be omitted only
/// for the builtin wing, which has a canonical box.
LatticeConfig lattice_from_config(const Config& config, bool builtin_mesh);

NmConfig optimizer_from_config(const Config& config, double default_initial_step);

/// Target ordinate function for the 2D modes, from a spec string:
/// "builtin:ramp" (tanh ramp, steepness configurable), "builtin:constant",
/// "samples:<csv>" (columns x,y), or "bezier:<csv>" (control points x,y).
TargetShape2D target2d_from_spec(const std::string& spec, double ramp_steepness);

/// Mesh named by paths.mesh: "builtin:wing" or an OBJ path. Untagged
/// meshes are tagged on all vertices.
Mesh mesh_from_config(const Config& config);

/// Seeded goal shape for optimize3d: two jittered twist deformations
/// composed through an intermediate re-embedding. The composed field lies
/// outside the span of any single deformation of the original box, so a
/// fixed parameterization stalls at a positive mismatch floor; closing the
/// remaining gap takes the same re-embedding step the adaptive strategy
/// performs between cycles.
SurfaceTarget make_seeded_target(const EmbeddedMesh& embedded, const DofMap& dof,
                                 double amplitude, long seed);

}  // namespace ffda
