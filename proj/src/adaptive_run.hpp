#pragma once

#include <functional>
#include <vector>

#include "ffd.hpp"
#include "mesh.hpp"
#include "nelder_mead.hpp"

namespace ffda {

/// A shape-optimization problem: the embedded mesh to deform, the movable
/// control points, and a cost that depends only on the deformed geometry.
struct FfdProblem {
  EmbeddedMesh embedded;
  DofMap dof;
  std::function<double(const Mesh&)> objective;
};

struct AdaptionSchedule {
  long period = 100;   // simplex iterations between control-volume resets
  int max_cycles = 1;  // 1 = plain optimization, no adaption
};

/// One control-volume reset: the deformation absorbed so far, the cost
/// immediately before and after (equal when the reset preserves the shape),
/// and how many vertices drifted outside the lattice bounds.
struct AdaptionEvent {
  int cycle = 0;
  long evaluations = 0;
  double value_before = 0.0;
  double value_after = 0.0;
  std::size_t escaped = 0;
};

struct AdaptiveResult {
  Mesh final_mesh;
  std::vector<double> final_design;  // relative to the last control volume
  double final_value = 0.0;
  long evaluations = 0;
  long iterations = 0;
  int cycles = 0;
  NmStop last_stop = NmStop::converged;
  RunHistory history;
  std::vector<AdaptionEvent> adaptions;
};

/// Alternates simplex optimization segments with control-volume resets:
/// each segment minimizes over the design vector for `period` iterations,
/// then the best deformation is absorbed into the reference mesh
/// (rebaseline) and the next segment restarts from the zero design with a
/// fresh simplex. The final segment runs without the iteration cap. Stops
/// early when the evaluation budget is spent or a segment converges with
/// no further improvement. History counters are cumulative across
/// segments; the first record of every restarted segment is tagged
/// `restart` and every reset is tagged `adaption`.
AdaptiveResult run_with_adaption(const FfdProblem& problem,
                                 const AdaptionSchedule& schedule,
                                 const NmConfig& config);

}  // namespace ffda
