#pragma once

#include <utility>
#include <vector>

namespace ffda {

/// Planar Bezier curve split into the fixed abscissa vector ("support")
/// and the free ordinate vector ("design"). A support is admissible when
/// it is strictly increasing with endpoints 0 and 1, so x(t) maps [0,1]
/// one-to-one onto itself.
struct BezierCurve2D {
  std::vector<double> support;
  std::vector<double> design;

  int degree() const { return static_cast<int>(support.size()) - 1; }
};

/// True iff x is strictly increasing with x.front() == 0 and x.back() == 1
/// (endpoint tolerance 1e-12).
bool is_admissible_support(const std::vector<double>& x);

/// Throws std::invalid_argument unless the curve has an admissible support
/// and matching support/design lengths.
void validate_curve(const BezierCurve2D& curve);

/// Point (x(t), y(t)) of the curve at parameter t in [0,1].
std::pair<double, double> curve_point(const BezierCurve2D& curve, double t);

/// Derivative x'(t) of the abscissa map: n * sum_k B_{n-1}^k(t) (x_{k+1}-x_k).
/// Positive on (0,1) for admissible supports.
double support_derivative(const std::vector<double>& support, double t);

/// Uniformly spaced admissible support of degree n (n+1 abscissas).
std::vector<double> uniform_support(int degree);

}  // namespace ffda
