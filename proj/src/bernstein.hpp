#pragma once

#include <cstdint>
#include <vector>

namespace ffda {

/// Largest degree for which binomial coefficients stay exact in 64 bits.
inline constexpr int kMaxBernsteinDegree = 60;

/// Exact binomial coefficient C(n,k). Returns 0 for k < 0 or k > n.
/// Throws std::invalid_argument when n < 0 or n exceeds kMaxBernsteinDegree.
std::uint64_t binomial(int n, int k);

/// Bernstein polynomial value C(n,k) t^k (1-t)^(n-k).
/// Requires 0 <= k <= n and t in [0,1]; exact 0/1 at the endpoints.
double bernstein_value(int n, int k, double t);

/// All n+1 Bernstein values at t. The components are non-negative and
/// sum to 1 (partition of unity).
std::vector<double> basis_vector(int n, double t);

}  // namespace ffda
