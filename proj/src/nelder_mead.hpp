#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ffda {

/// Classical Nelder-Mead coefficients plus stopping controls.
struct NmConfig {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double initial_step = 0.1;   // per-coordinate offset of the initial simplex
  long max_evaluations = 2000;
  double simplex_size_tol = 1e-9;
  double value_tol = 1e-12;
};

enum class RunEvent { step, adaption, restart };

const char* run_event_name(RunEvent e);

struct RunRecord {
  long evaluations = 0;  // objective calls so far
  long iterations = 0;   // reflect-based updates so far
  double best_value = 0.0;
  RunEvent event = RunEvent::step;
};

/// Improvement-by-improvement trace of a minimization run.
struct RunHistory {
  std::vector<RunRecord> records;
};

enum class NmStop { converged, evaluation_budget, iteration_cap };

struct NmResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  long evaluations = 0;
  long iterations = 0;
  NmStop stop = NmStop::converged;
  RunHistory history;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Derivative-free simplex minimization (reflect / expand / contract /
/// shrink). Stops when the simplex diameter falls below simplex_size_tol,
/// the value spread falls below value_tol, or the evaluation budget is
/// spent. `max_iterations` additionally caps the number of simplex
/// iterations (0 means uncapped); the adaptive outer loop uses it to cut
/// segments at the scheduled length.
///
/// Deterministic: ties in the vertex ordering break by insertion index.
/// Throws std::invalid_argument when the objective is non-finite at x0.
NmResult nelder_mead(const Objective& objective, const std::vector<double>& x0,
                     const NmConfig& config, long max_iterations = 0);

}  // namespace ffda
