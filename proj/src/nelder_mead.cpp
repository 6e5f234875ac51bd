#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ffda {

const char* run_event_name(RunEvent e) {
  switch (e) {
    case RunEvent::step: return "step";
    case RunEvent::adaption: return "adaption";
    case RunEvent::restart: return "restart";
  }
  return "step";
}

namespace {

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
  long order = 0;  // insertion index, the deterministic tie-breaker
};

double spread_inf(const std::vector<Vertex>& simplex) {
  double d = 0.0;
  const std::vector<double>& best = simplex.front().x;
  for (std::size_t v = 1; v < simplex.size(); ++v)
    for (std::size_t i = 0; i < best.size(); ++i)
      d = std::max(d, std::abs(simplex[v].x[i] - best[i]));
  return d;
}

// Non-finite values sort to the worst end so a penalty-style objective
// cannot wedge the ordering.
bool value_less(double a, double b) {
  const bool fa = std::isfinite(a), fb = std::isfinite(b);
  if (fa != fb) return fa;
  return a < b;
}

}  // namespace

NmResult nelder_mead(const Objective& objective, const std::vector<double>& x0,
                     const NmConfig& config, long max_iterations) {
  const std::size_t dim = x0.size();
  if (dim < 1) throw std::invalid_argument("nelder_mead: dimension must be >= 1");
  if (!(config.reflection > 0.0) || !(config.expansion > 1.0) ||
      !(config.contraction > 0.0 && config.contraction < 1.0) ||
      !(config.shrink > 0.0 && config.shrink < 1.0))
    throw std::invalid_argument("nelder_mead: coefficients out of range");

  NmResult result;
  long evals = 0;
  long next_order = 0;

  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return objective(x);
  };

  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back({x0, eval(x0), next_order++});
  if (!std::isfinite(simplex[0].f))
    throw std::invalid_argument("nelder_mead: objective not finite at x0");
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> x = x0;
    x[i] += config.initial_step;
    simplex.push_back({std::move(x), 0.0, next_order++});
    simplex.back().f = eval(simplex.back().x);
  }

  auto sort_simplex = [&]() {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) {
      if (a.f != b.f || std::isnan(a.f) || std::isnan(b.f)) return value_less(a.f, b.f);
      return a.order < b.order;
    });
  };
  sort_simplex();

  double best_seen = simplex.front().f;
  result.history.records.push_back({evals, 0, best_seen, RunEvent::step});

  auto record_improvement = [&](long iterations) {
    if (value_less(simplex.front().f, best_seen)) {
      best_seen = simplex.front().f;
      result.history.records.push_back({evals, iterations, best_seen, RunEvent::step});
    }
  };

  long iterations = 0;
  NmStop stop = NmStop::evaluation_budget;
  while (true) {
    if (evals >= config.max_evaluations) {
      stop = NmStop::evaluation_budget;
      break;
    }
    const double value_spread =
        std::abs(simplex.back().f - simplex.front().f);
    if (spread_inf(simplex) < config.simplex_size_tol ||
        (std::isfinite(value_spread) && value_spread < config.value_tol)) {
      stop = NmStop::converged;
      break;
    }
    if (max_iterations > 0 && iterations >= max_iterations) {
      stop = NmStop::iteration_cap;
      break;
    }

    // Centroid of every vertex except the worst.
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v < dim; ++v)
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].x[i];
    for (std::size_t i = 0; i < dim; ++i) centroid[i] /= static_cast<double>(dim);

    Vertex& worst = simplex.back();
    const double f_best = simplex.front().f;
    const double f_second_worst = simplex[dim - 1].f;

    std::vector<double> xr(dim);
    for (std::size_t i = 0; i < dim; ++i)
      xr[i] = centroid[i] + config.reflection * (centroid[i] - worst.x[i]);
    const double fr = eval(xr);

    bool shrink_needed = false;
    if (value_less(fr, f_best)) {
      std::vector<double> xe(dim);
      for (std::size_t i = 0; i < dim; ++i)
        xe[i] = centroid[i] + config.expansion * (xr[i] - centroid[i]);
      const double fe = eval(xe);
      if (value_less(fe, fr)) {
        worst = {std::move(xe), fe, next_order++};
      } else {
        worst = {std::move(xr), fr, next_order++};
      }
    } else if (value_less(fr, f_second_worst)) {
      worst = {std::move(xr), fr, next_order++};
    } else if (value_less(fr, worst.f)) {
      // Outside contraction.
      std::vector<double> xc(dim);
      for (std::size_t i = 0; i < dim; ++i)
        xc[i] = centroid[i] + config.contraction * (xr[i] - centroid[i]);
      const double fc = eval(xc);
      if (!value_less(fr, fc)) {
        worst = {std::move(xc), fc, next_order++};
      } else {
        shrink_needed = true;
      }
    } else {
      // Inside contraction.
      std::vector<double> xc(dim);
      for (std::size_t i = 0; i < dim; ++i)
        xc[i] = centroid[i] - config.contraction * (centroid[i] - worst.x[i]);
      const double fc = eval(xc);
      if (value_less(fc, worst.f)) {
        worst = {std::move(xc), fc, next_order++};
      } else {
        shrink_needed = true;
      }
    }

    if (shrink_needed) {
      for (std::size_t v = 1; v < simplex.size(); ++v) {
        if (evals >= config.max_evaluations) break;  // keep x and f in sync
        for (std::size_t i = 0; i < dim; ++i)
          simplex[v].x[i] = simplex[0].x[i] +
                            config.shrink * (simplex[v].x[i] - simplex[0].x[i]);
        simplex[v].f = eval(simplex[v].x);
        simplex[v].order = next_order++;
      }
    }

    ++iterations;
    sort_simplex();
    record_improvement(iterations);
  }

  sort_simplex();
  result.best_point = simplex.front().x;
  result.best_value = simplex.front().f;
  result.evaluations = evals;
  result.iterations = iterations;
  result.stop = stop;
  return result;
}

}  // namespace ffda
