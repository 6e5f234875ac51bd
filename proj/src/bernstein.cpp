#include "bernstein.hpp"

#include <stdexcept>
#include <string>

namespace ffda {

std::uint64_t binomial(int n, int k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
  if (n > kMaxBernsteinDegree)
    throw std::invalid_argument("binomial: degree " + std::to_string(n) +
                                " exceeds exact-integer cap " +
                                std::to_string(kMaxBernsteinDegree));
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    // c*(n-k+i) is divisible by i at every step; the product fits in
    // 64 bits for n <= 60.
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

double bernstein_value(int n, int k, double t) {
  if (k < 0 || k > n) throw std::invalid_argument("bernstein_value: index out of range");
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("bernstein_value: t outside [0,1]");
  if (t == 0.0) return k == 0 ? 1.0 : 0.0;
  if (t == 1.0) return k == n ? 1.0 : 0.0;
  double tk = 1.0;
  for (int i = 0; i < k; ++i) tk *= t;
  double sk = 1.0;
  const double s = 1.0 - t;
  for (int i = 0; i < n - k; ++i) sk *= s;
  return static_cast<double>(binomial(n, k)) * tk * sk;
}

std::vector<double> basis_vector(int n, double t) {
  if (n < 0) throw std::invalid_argument("basis_vector: degree must be non-negative");
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("basis_vector: t outside [0,1]");
  std::vector<double> b(static_cast<std::size_t>(n) + 1);
  if (t == 0.0) {
    b[0] = 1.0;
    return b;
  }
  if (t == 1.0) {
    b[static_cast<std::size_t>(n)] = 1.0;
    return b;
  }
  const double s = 1.0 - t;
  // k-th entry is C(n,k) t^k s^(n-k); build the power ladders once.
  double tk = 1.0;
  for (int k = 0; k <= n; ++k) {
    b[static_cast<std::size_t>(k)] = static_cast<double>(binomial(n, k)) * tk;
    tk *= t;
  }
  double sk = 1.0;
  for (int k = n; k >= 0; --k) {
    b[static_cast<std::size_t>(k)] *= sk;
    sk *= s;
  }
  return b;
}

}  // namespace ffda
