#pragma once

#include <optional>
#include <vector>

#include "bezier.hpp"
#include "linalg.hpp"
#include "nelder_mead.hpp"

namespace ffda {

/// The assembled linear system of the parametric shape-inverse problem:
/// minimizing the L2 distance to a target ordinate function over designs Y
/// at fixed support X reduces to solving matrix * Y = load.
struct GramSystem {
  Matrix matrix;
  std::vector<double> load;
  int degree = 0;
  std::vector<double> support;
};

struct TikhonovConfig {
  double rho = 0.0;
};

/// Target ordinate function on [0,1]: either an explicit Bezier curve or a
/// dense sample table read by monotone (piecewise-linear) interpolation.
class TargetShape2D {
public:
  static TargetShape2D from_curve(BezierCurve2D curve);
  /// Samples must have strictly increasing abscissas covering [0,1].
  static TargetShape2D from_samples(std::vector<double> x, std::vector<double> y);

  double value_at(double x) const;
  bool is_curve() const { return curve_.has_value(); }
  const BezierCurve2D* curve() const { return curve_ ? &*curve_ : nullptr; }

private:
  TargetShape2D() = default;
  std::optional<BezierCurve2D> curve_;
  std::vector<double> sample_x_;
  std::vector<double> sample_y_;
};

/// Weighted Bernstein Gram matrix for an admissible support: entry (i,j) is
/// the integral over [0,1] of B_n^i(t) B_n^j(t) x'(t) dt, evaluated by a
/// Gauss-Legendre rule that is exact for the polynomial integrand.
Matrix gram_matrix(const std::vector<double>& support, int degree);

/// Closed form of gram_matrix for the uniform support:
/// entry (i,j) = C(n,i) C(n,j) / C(2n,i+j) / (2n+1).
Matrix uniform_gram(int degree);

/// Load vector of the inverse problem: entry i is the integral of
/// B_n^i(t) ybar(x(t)) x'(t) dt. For a Bezier target over the same support
/// this equals gram_matrix * target design.
std::vector<double> load_vector(const std::vector<double>& support, int degree,
                                const TargetShape2D& target);

GramSystem assemble_system(const std::vector<double>& support, int degree,
                           const TargetShape2D& target);

/// Direct symmetric solve of matrix * Y = load. Throws NumericError when the
/// factorization meets a negligible pivot (ill-conditioned system).
std::vector<double> solve_exact(const GramSystem& system);

/// Singular values of a symmetric matrix, sorted descending. For the
/// symmetric positive definite matrices of this problem they coincide with
/// the eigenvalues.
std::vector<double> singular_values(const Matrix& matrix);

/// Ratio of extreme singular values. Throws NumericError when the smallest
/// one vanishes within tolerance (infinite condition number).
double condition_number(const Matrix& matrix);

/// Minimizer of ||A Y - b||^2 + rho ||Y||^2, i.e. the solution of
/// (A^T A + rho I) Y = A^T b.
std::vector<double> tikhonov_solve(const GramSystem& system, const TikhonovConfig& config);

/// Sum of absolute successive differences of the design components.
double total_variation(const std::vector<double>& design);

/// Dense point sampling of a curve; abscissas come out strictly increasing.
struct SampledShape {
  std::vector<double> x;
  std::vector<double> y;
};

/// Curve sampled at `count` uniform parameter values.
SampledShape sample_curve(const BezierCurve2D& curve, int count);

struct FitResult {
  std::vector<double> design;
  double residual = 0.0;  // root-mean-square over the fit grid
};

/// Least-squares design of degree n over a given support, matching the
/// sampled shape on a uniform parameter grid of 50(n+1) points; the shape
/// ordinate is read by piecewise-linear interpolation in x. Requires at
/// least 10(n+1) shape samples. Throws NumericError on a rank-deficient
/// normal system (degenerate support).
FitResult fit_over_support(const SampledShape& shape, const std::vector<double>& support,
                           int degree);

struct AdaptOptions {
  /// Absolute cap on the refit residual of candidate supports. Zero derives
  /// the cap as fit_tolerance_factor times the refit residual over the
  /// input support itself — which is ~0 for any exactly-representable
  /// curve, so standalone calls without a cap keep the input unchanged.
  /// Callers that know how well the input pair fits the shape it was
  /// fitted to (e.g. the reconstruction driver) pass that residual scale
  /// here to give the search real room.
  double fit_tolerance = 0.0;
  double fit_tolerance_factor = 1.05;
  double min_gap = 1e-4;         // smallest allowed support spacing
  int samples_per_control = 50;  // dense sampling of the input curve
  long search_evaluations = 0;   // 0 = 200 * degree
  double search_step = 0.1;      // simplex step in log-gap coordinates
};

struct AdaptResult {
  std::vector<double> support;
  std::vector<double> design;
  double tv_before = 0.0;
  double tv_after = 0.0;
  double fit_residual = 0.0;   // of the returned pair against the input curve
  double fit_tolerance = 0.0;
  bool support_changed = false;
};

/// Support adaption: search admissible supports for one whose refit of the
/// current curve has minimal total variation while the refit residual stays
/// within the tolerance. The input pair is always a candidate, so the
/// returned total variation never exceeds the input's. Interior spacing is
/// searched in unconstrained log-gap coordinates with Nelder-Mead.
AdaptResult adapt_support(const BezierCurve2D& current, const AdaptOptions& options = {});

enum class ReconstructPhase { solve, adapt };

struct ReconstructRecord {
  int cycle = 0;
  ReconstructPhase phase = ReconstructPhase::solve;
  std::vector<double> support;
  std::vector<double> design;
  double fit_error = 0.0;      // L2 distance to the target, sqrt(int (y-ybar)^2 dx)
  double tv = 0.0;
  double adapt_residual = 0.0;    // phase-2 diagnostics
  double adapt_tolerance = 0.0;
};

struct TwoPhaseConfig {
  int cycles = 1;
  double rho = 0.0;  // > 0 switches the solve phase to Tikhonov
  AdaptOptions adapt;
};

/// Alternates (1) solving the inverse problem for the design at fixed
/// support and (2) support adaption, recording fit error and total
/// variation after each phase. Unless config.adapt.fit_tolerance is set,
/// each adaption may use fit_tolerance_factor times the residual the solve
/// phase left against the target.
std::vector<ReconstructRecord> two_phase_reconstruct(const TargetShape2D& target,
                                                     int degree,
                                                     const TwoPhaseConfig& config);

/// L2 fit error of a curve against the target, sqrt of the integral of the
/// squared ordinate gap in x, by composite Simpson sampling.
double curve_fit_error(const BezierCurve2D& curve, const TargetShape2D& target);

}  // namespace ffda
