#include "adaptive_run.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "errors.hpp"

namespace ffda {

AdaptiveResult run_with_adaption(const FfdProblem& problem,
                                 const AdaptionSchedule& schedule,
                                 const NmConfig& config) {
  if (!problem.objective) throw ConfigError("run: objective is not set");
  if (schedule.period < 1) throw ConfigError("run: adaption period must be >= 1");
  if (schedule.max_cycles < 1) throw ConfigError("run: max_cycles must be >= 1");

  const long dim = static_cast<long>(problem.dof.count());
  if (config.max_evaluations < dim + 2) {
    throw ConfigError("run: evaluation budget cannot cover the initial simplex");
  }

  AdaptiveResult result;
  EmbeddedMesh embedded = problem.embedded;
  const std::vector<double> zero(problem.dof.count(), 0.0);

  for (int cycle = 1; cycle <= schedule.max_cycles; ++cycle) {
    const long remaining = config.max_evaluations - result.evaluations;
    if (remaining < dim + 2) break;  // cannot seed another simplex

    auto design_objective = [&](const std::vector<double>& design) {
      return problem.objective(
          apply_deformation(embedded, problem.dof.decode(design, embedded.bounds)));
    };

    NmConfig segment = config;
    segment.max_evaluations = remaining;
    const long iteration_cap = cycle < schedule.max_cycles ? schedule.period : 0;
    const NmResult seg = nelder_mead(design_objective, zero, segment, iteration_cap);

    for (std::size_t r = 0; r < seg.history.records.size(); ++r) {
      RunRecord rec = seg.history.records[r];
      rec.evaluations += result.evaluations;
      rec.iterations += result.iterations;
      if (cycle > 1 && r == 0) rec.event = RunEvent::restart;
      result.history.records.push_back(rec);
    }
    const double segment_start = seg.history.records.front().best_value;
    result.evaluations += seg.evaluations;
    result.iterations += seg.iterations;
    result.cycles = cycle;
    result.last_stop = seg.stop;
    result.final_design = seg.best_point;
    result.final_value = seg.best_value;
    result.final_mesh =
        apply_deformation(embedded, problem.dof.decode(seg.best_point, embedded.bounds));

    if (cycle == schedule.max_cycles) break;
    if (seg.stop == NmStop::evaluation_budget) break;
    if (seg.stop == NmStop::converged &&
        !(segment_start - seg.best_value > config.value_tol)) {
      break;  // converged segment with no real progress: done globally
    }
    if (config.max_evaluations - result.evaluations < dim + 2) break;

    // Absorb the best deformation into the reference mesh, reset the
    // control volume, and re-measure the (identical) shape under the
    // fresh parameterization.
    const RebaselineResult rb = rebaseline(
        embedded, problem.dof.decode(seg.best_point, embedded.bounds));
    embedded = rb.embedded;
    const double value_after = problem.objective(embedded.reference);
    result.evaluations += 1;
    result.history.records.push_back(
        {result.evaluations, result.iterations, value_after, RunEvent::adaption});
    result.adaptions.push_back(
        {cycle, result.evaluations, seg.best_value, value_after, rb.escaped});
  }

  if (result.cycles == 0) {
    throw ConfigError("run: evaluation budget cannot cover the initial simplex");
  }
  return result;
}

}  // namespace ffda
