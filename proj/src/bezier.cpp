#include "bezier.hpp"

#include <cmath>
#include <stdexcept>

#include "bernstein.hpp"

namespace ffda {

bool is_admissible_support(const std::vector<double>& x) {
  if (x.size() < 2) return false;
  if (std::abs(x.front()) > 1e-12 || std::abs(x.back() - 1.0) > 1e-12) return false;
  for (std::size_t k = 0; k + 1 < x.size(); ++k)
    if (!(x[k + 1] > x[k])) return false;
  return true;
}

void validate_curve(const BezierCurve2D& curve) {
  if (!is_admissible_support(curve.support))
    throw std::invalid_argument("curve support is not admissible");
  if (curve.design.size() != curve.support.size())
    throw std::invalid_argument("curve support and design lengths differ");
}

std::pair<double, double> curve_point(const BezierCurve2D& curve, double t) {
  validate_curve(curve);
  const int n = curve.degree();
  const std::vector<double> b = basis_vector(n, t);
  double x = 0.0, y = 0.0;
  for (int k = 0; k <= n; ++k) {
    x += b[static_cast<std::size_t>(k)] * curve.support[static_cast<std::size_t>(k)];
    y += b[static_cast<std::size_t>(k)] * curve.design[static_cast<std::size_t>(k)];
  }
  return {x, y};
}

double support_derivative(const std::vector<double>& support, double t) {
  const int n = static_cast<int>(support.size()) - 1;
  if (n < 1) throw std::invalid_argument("support_derivative: need degree >= 1");
  const std::vector<double> b = basis_vector(n - 1, t);
  double d = 0.0;
  for (int k = 0; k < n; ++k)
    d += b[static_cast<std::size_t>(k)] *
         (support[static_cast<std::size_t>(k) + 1] - support[static_cast<std::size_t>(k)]);
  return static_cast<double>(n) * d;
}

std::vector<double> uniform_support(int degree) {
  if (degree < 1) throw std::invalid_argument("uniform_support: degree must be >= 1");
  std::vector<double> x(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k)
    x[static_cast<std::size_t>(k)] = static_cast<double>(k) / static_cast<double>(degree);
  return x;
}

}  // namespace ffda
