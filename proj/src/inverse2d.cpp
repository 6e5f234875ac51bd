#include "inverse2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bernstein.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace ffda {

TargetShape2D TargetShape2D::from_curve(BezierCurve2D curve) {
  validate_curve(curve);
  TargetShape2D t;
  t.curve_ = std::move(curve);
  return t;
}

TargetShape2D TargetShape2D::from_samples(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("target samples: need matching x/y of length >= 2");
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i + 1] > x[i]))
      throw std::invalid_argument("target samples: abscissas must be strictly increasing");
  if (x.front() > 1e-9 || x.back() < 1.0 - 1e-9)
    throw std::invalid_argument("target samples: abscissas must cover [0,1]");
  TargetShape2D t;
  t.sample_x_ = std::move(x);
  t.sample_y_ = std::move(y);
  return t;
}

double TargetShape2D::value_at(double x) const {
  if (curve_) {
    // Invert the monotone abscissa map by bisection, then read the ordinate.
    const BezierCurve2D& c = *curve_;
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (curve_point(c, mid).first < x)
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-16) break;
    }
    return curve_point(c, 0.5 * (lo + hi)).second;
  }
  const std::vector<double>& xs = sample_x_;
  if (x <= xs.front()) return sample_y_.front();
  if (x >= xs.back()) return sample_y_.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - w) * sample_y_[lo] + w * sample_y_[hi];
}

namespace {

void require_admissible(const std::vector<double>& support) {
  if (!is_admissible_support(support))
    throw std::invalid_argument("support is not admissible (strictly increasing, 0..1)");
}

}  // namespace

Matrix gram_matrix(const std::vector<double>& support, int degree) {
  require_admissible(support);
  if (degree < 1 || degree + 1 != static_cast<int>(support.size()))
    throw std::invalid_argument("gram_matrix: degree/support size mismatch");
  const int n = degree;
  // Integrand degree is 3n-1, so ceil(3n/2) Gauss points integrate exactly.
  const QuadratureRule rule = gauss_legendre((3 * n + 1) / 2);
  Matrix a(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    const double w = rule.weights[q] * support_derivative(support, t);
    const std::vector<double> b = basis_vector(n, t);
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +=
            w * b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  }
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < i; ++j)
      a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          a(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
  return a;
}

Matrix uniform_gram(int degree) {
  if (degree < 1) throw std::invalid_argument("uniform_gram: degree must be >= 1");
  const int n = degree;
  Matrix a(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          static_cast<double>(binomial(n, i)) * static_cast<double>(binomial(n, j)) /
          static_cast<double>(binomial(2 * n, i + j)) / static_cast<double>(2 * n + 1);
  return a;
}

std::vector<double> load_vector(const std::vector<double>& support, int degree,
                                const TargetShape2D& target) {
  require_admissible(support);
  if (degree < 1 || degree + 1 != static_cast<int>(support.size()))
    throw std::invalid_argument("load_vector: degree/support size mismatch");
  const int n = degree;
  const QuadratureRule rule = gauss_legendre((3 * n + 1) / 2);
  std::vector<double> rhs(static_cast<std::size_t>(n) + 1, 0.0);
  BezierCurve2D abscissa{support, support};
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    const double xt = curve_point(abscissa, t).first;
    const double w = rule.weights[q] * support_derivative(support, t) * target.value_at(xt);
    const std::vector<double> b = basis_vector(n, t);
    for (int i = 0; i <= n; ++i) rhs[static_cast<std::size_t>(i)] += w * b[static_cast<std::size_t>(i)];
  }
  return rhs;
}

GramSystem assemble_system(const std::vector<double>& support, int degree,
                           const TargetShape2D& target) {
  GramSystem s;
  s.matrix = gram_matrix(support, degree);
  s.load = load_vector(support, degree, target);
  s.degree = degree;
  s.support = support;
  return s;
}

std::vector<double> solve_exact(const GramSystem& system) {
  return solve_symmetric(system.matrix, system.load);
}

std::vector<double> singular_values(const Matrix& matrix) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("singular_values: matrix must be square");
  std::vector<double> ev = jacobi_eigenvalues(matrix);
  for (double& v : ev) v = std::abs(v);
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

double condition_number(const Matrix& matrix) {
  const std::vector<double> sv = singular_values(matrix);
  const double smax = sv.front();
  const double smin = sv.back();
  if (!(smin > 1e-15 * smax))
    throw NumericError("condition_number: smallest singular value vanishes");
  return smax / smin;
}

std::vector<double> tikhonov_solve(const GramSystem& system, const TikhonovConfig& config) {
  if (config.rho < 0.0) throw std::invalid_argument("tikhonov_solve: rho must be >= 0");
  if (config.rho == 0.0) return solve_exact(system);
  Matrix normal = transpose_times(system.matrix);
  for (std::size_t i = 0; i < normal.rows(); ++i) normal(i, i) += config.rho;
  const std::vector<double> rhs = transpose_matvec(system.matrix, system.load);
  return solve_symmetric(normal, rhs);
}

double total_variation(const std::vector<double>& design) {
  if (design.empty()) throw std::invalid_argument("total_variation: empty design");
  double tv = 0.0;
  for (std::size_t k = 0; k + 1 < design.size(); ++k)
    tv += std::abs(design[k + 1] - design[k]);
  return tv;
}

SampledShape sample_curve(const BezierCurve2D& curve, int count) {
  validate_curve(curve);
  if (count < 2) throw std::invalid_argument("sample_curve: count must be >= 2");
  SampledShape s;
  s.x.resize(static_cast<std::size_t>(count));
  s.y.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    const auto [x, y] = curve_point(curve, t);
    s.x[static_cast<std::size_t>(i)] = x;
    s.y[static_cast<std::size_t>(i)] = y;
  }
  return s;
}

namespace {

double interp_shape(const SampledShape& shape, double x) {
  const std::vector<double>& xs = shape.x;
  if (x <= xs.front()) return shape.y.front();
  if (x >= xs.back()) return shape.y.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return (1.0 - w) * shape.y[lo] + w * shape.y[hi];
}

}  // namespace

FitResult fit_over_support(const SampledShape& shape, const std::vector<double>& support,
                           int degree) {
  require_admissible(support);
  if (degree < 1 || degree + 1 != static_cast<int>(support.size()))
    throw std::invalid_argument("fit_over_support: degree/support size mismatch");
  if (static_cast<int>(shape.x.size()) < 10 * (degree + 1))
    throw std::invalid_argument("fit_over_support: need at least 10(n+1) shape samples");

  const int n = degree;
  const int grid = 50 * (n + 1);
  Matrix normal(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
  std::vector<double> rhs(static_cast<std::size_t>(n) + 1, 0.0);
  BezierCurve2D abscissa{support, support};

  std::vector<std::vector<double>> bases(static_cast<std::size_t>(grid));
  std::vector<double> values(static_cast<std::size_t>(grid));
  for (int s = 0; s < grid; ++s) {
    const double t = static_cast<double>(s) / static_cast<double>(grid - 1);
    bases[static_cast<std::size_t>(s)] = basis_vector(n, t);
    const double xt = curve_point(abscissa, t).first;
    values[static_cast<std::size_t>(s)] = interp_shape(shape, xt);
  }
  for (int s = 0; s < grid; ++s) {
    const std::vector<double>& b = bases[static_cast<std::size_t>(s)];
    const double y = values[static_cast<std::size_t>(s)];
    for (int i = 0; i <= n; ++i) {
      rhs[static_cast<std::size_t>(i)] += b[static_cast<std::size_t>(i)] * y;
      for (int j = i; j <= n; ++j)
        normal(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +=
            b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  }
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < i; ++j)
      normal(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          normal(static_cast<std::size_t>(j), static_cast<std::size_t>(i));

  FitResult result;
  try {
    result.design = solve_symmetric(normal, rhs);
  } catch (const NumericError&) {
    throw NumericError("fit_over_support: rank-deficient normal system (degenerate support)");
  }

  double sse = 0.0;
  for (int s = 0; s < grid; ++s) {
    const std::vector<double>& b = bases[static_cast<std::size_t>(s)];
    double y = 0.0;
    for (int i = 0; i <= n; ++i)
      y += b[static_cast<std::size_t>(i)] * result.design[static_cast<std::size_t>(i)];
    const double r = y - values[static_cast<std::size_t>(s)];
    sse += r * r;
  }
  result.residual = std::sqrt(sse / static_cast<double>(grid));
  return result;
}

namespace {

/// Gap parameterization of admissible supports: n unconstrained reals map
/// through exponentials and a prefix sum to strictly increasing abscissas
/// with endpoints 0 and 1 and every gap at least min_gap.
std::vector<double> support_from_log_gaps(const std::vector<double>& u, double min_gap) {
  const std::size_t n = u.size();
  std::vector<double> gap(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    // Clamp to keep exp() finite under wild simplex excursions.
    gap[k] = std::exp(std::clamp(u[k], -60.0, 60.0));
    sum += gap[k];
  }
  const double free_span = 1.0 - static_cast<double>(n) * min_gap;
  std::vector<double> x(n + 1);
  x[0] = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += min_gap + free_span * gap[k] / sum;
    x[k + 1] = acc;
  }
  x[n] = 1.0;  // pin the endpoint against accumulated roundoff
  return x;
}

std::vector<double> log_gaps_from_support(const std::vector<double>& x, double min_gap) {
  const std::size_t n = x.size() - 1;
  std::vector<double> u(n);
  for (std::size_t k = 0; k < n; ++k)
    u[k] = std::log(std::max(x[k + 1] - x[k] - min_gap, 1e-12));
  return u;
}

}  // namespace

AdaptResult adapt_support(const BezierCurve2D& current, const AdaptOptions& options) {
  validate_curve(current);
  const int n = current.degree();
  if (n < 2) {
    // A single interior-free support (n=1) has nothing to adapt.
    AdaptResult r;
    r.support = current.support;
    r.design = current.design;
    r.tv_before = r.tv_after = total_variation(current.design);
    return r;
  }
  if (static_cast<double>(n) * options.min_gap >= 1.0)
    throw std::invalid_argument("adapt_support: min_gap too large for this degree");

  if (options.fit_tolerance < 0.0)
    throw std::invalid_argument("adapt_support: fit_tolerance must be >= 0");
  const SampledShape shape = sample_curve(current, options.samples_per_control * (n + 1));
  const FitResult baseline = fit_over_support(shape, current.support, n);
  const double tolerance = options.fit_tolerance > 0.0
                               ? options.fit_tolerance
                               : options.fit_tolerance_factor * baseline.residual;

  AdaptResult result;
  result.tv_before = total_variation(current.design);
  result.support = current.support;
  result.design = current.design;
  result.tv_after = result.tv_before;
  result.fit_residual = baseline.residual;
  result.fit_tolerance = tolerance;

  double best_tv = result.tv_before;
  bool improved = false;

  auto objective = [&](const std::vector<double>& u) {
    const std::vector<double> support = support_from_log_gaps(u, options.min_gap);
    FitResult fit;
    try {
      fit = fit_over_support(shape, support, n);
    } catch (const NumericError&) {
      return 1e9;
    }
    const double tv = total_variation(fit.design);
    if (fit.residual > tolerance) return tv + 1e6;
    if (tv < best_tv) {
      best_tv = tv;
      result.support = support;
      result.design = fit.design;
      result.tv_after = tv;
      result.fit_residual = fit.residual;
      improved = true;
    }
    return tv;
  };

  NmConfig nm;
  nm.initial_step = options.search_step;
  nm.max_evaluations =
      options.search_evaluations > 0 ? options.search_evaluations : 200L * n;
  nm.simplex_size_tol = 1e-7;
  nm.value_tol = 1e-12;
  nelder_mead(objective, log_gaps_from_support(current.support, options.min_gap), nm);

  result.support_changed = improved;
  return result;
}

double curve_fit_error(const BezierCurve2D& curve, const TargetShape2D& target) {
  validate_curve(curve);
  // Composite Simpson in t of (y - ybar(x))^2 x'(t); dense enough for the
  // sampled targets this sees.
  const int intervals = 2000;
  double sum = 0.0;
  for (int s = 0; s <= intervals; ++s) {
    const double t = static_cast<double>(s) / intervals;
    const auto [x, y] = curve_point(curve, t);
    const double gap = y - target.value_at(x);
    const double f = gap * gap * support_derivative(curve.support, t);
    const double coeff = (s == 0 || s == intervals) ? 1.0 : (s % 2 ? 4.0 : 2.0);
    sum += coeff * f;
  }
  return std::sqrt(std::max(sum / (3.0 * intervals), 0.0));
}

std::vector<ReconstructRecord> two_phase_reconstruct(const TargetShape2D& target,
                                                     int degree,
                                                     const TwoPhaseConfig& config) {
  if (config.cycles < 1) throw std::invalid_argument("two_phase_reconstruct: cycles >= 1");
  std::vector<ReconstructRecord> history;
  std::vector<double> support = uniform_support(degree);

  for (int cycle = 1; cycle <= config.cycles; ++cycle) {
    const GramSystem system = assemble_system(support, degree, target);
    std::vector<double> design = config.rho > 0.0
                                     ? tikhonov_solve(system, {config.rho})
                                     : solve_exact(system);
    BezierCurve2D curve{support, design};
    ReconstructRecord solve_rec;
    solve_rec.cycle = cycle;
    solve_rec.phase = ReconstructPhase::solve;
    solve_rec.support = support;
    solve_rec.design = design;
    solve_rec.fit_error = curve_fit_error(curve, target);
    solve_rec.tv = total_variation(design);
    history.push_back(std::move(solve_rec));

    AdaptOptions adapt = config.adapt;
    if (adapt.fit_tolerance <= 0.0) {
      // Allow the support search as much refit slack as the solve phase
      // actually left against the target, measured in the same RMS metric
      // the search uses.
      const SampledShape sampled =
          sample_curve(curve, adapt.samples_per_control * (degree + 1));
      double sse = 0.0;
      for (std::size_t s = 0; s < sampled.x.size(); ++s) {
        const double gap = sampled.y[s] - target.value_at(sampled.x[s]);
        sse += gap * gap;
      }
      const double rms = std::sqrt(sse / static_cast<double>(sampled.x.size()));
      adapt.fit_tolerance = adapt.fit_tolerance_factor * rms;
    }
    const AdaptResult adapted = adapt_support(curve, adapt);
    support = adapted.support;
    BezierCurve2D adapted_curve{adapted.support, adapted.design};
    ReconstructRecord adapt_rec;
    adapt_rec.cycle = cycle;
    adapt_rec.phase = ReconstructPhase::adapt;
    adapt_rec.support = adapted.support;
    adapt_rec.design = adapted.design;
    adapt_rec.fit_error = curve_fit_error(adapted_curve, target);
    adapt_rec.tv = adapted.tv_after;
    adapt_rec.adapt_residual = adapted.fit_residual;
    adapt_rec.adapt_tolerance = adapted.fit_tolerance;
    history.push_back(std::move(adapt_rec));
  }
  return history;
}

}  // namespace ffda
