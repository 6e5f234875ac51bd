#pragma once

#include <cstddef>
#include <vector>

namespace ffda {

/// Dense row-major matrix, sized for the small systems this project needs
/// (order <= a few dozen).
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  static Matrix identity(std::size_t n);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix transpose_times(const Matrix& a);                         // A^T A
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);
std::vector<double> transpose_matvec(const Matrix& a, const std::vector<double>& x);

double norm2(const std::vector<double>& v);
double frobenius_norm(const Matrix& a);

/// Solves A x = b for symmetric A by LDL^T factorization without pivoting.
/// Throws NumericError when a pivot falls below 1e-14 times the largest
/// diagonal magnitude, which signals an (effectively) singular system.
std::vector<double> solve_symmetric(const Matrix& a, const std::vector<double>& b);

/// All eigenvalues of a symmetric matrix by the cyclic Jacobi iteration,
/// rotating until every off-diagonal entry is below 1e-14 * ||A||_F.
/// Result is unordered.
std::vector<double> jacobi_eigenvalues(const Matrix& a);

}  // namespace ffda
