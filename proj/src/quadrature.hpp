#pragma once

#include <vector>

namespace ffda {

/// Gauss-Legendre rule mapped to [0,1]. Exact for polynomials of degree
/// up to 2*count - 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int count);

}  // namespace ffda
