#pragma once

#include <cstddef>
#include <vector>

#include "kdda/errors.hpp"

namespace kdda {

/// Dense real matrix, row-major. Dimensions are fixed at construction and
/// every entry must be finite; violations throw InvalidMatrix.
class Matrix {
 public:
  /// Empty (0x0) placeholder so model structs can be default-constructed
  /// before deserialization fills them; no operation accepts it.
  Matrix() : rows_(0), cols_(0) {}

  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Matrix transposed() const;

  /// Throws InvalidMatrix if any entry is NaN or infinite.
  void check_finite() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Full spectrum of a symmetric matrix. Eigenvalues are sorted descending;
/// column j of `eigenvectors` is the unit-norm eigenvector paired with
/// eigenvalues[j], with its first component of magnitude > 1e-12 made
/// positive so results are reproducible.
struct EigenResult {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  /// True if |eigenvalues[j]| < tol * max|eigenvalue|, the caller-supplied
  /// near-zero threshold recorded at decomposition time. Such eigenvalues
  /// are reported, never dropped.
  bool negligible(std::size_t j) const;

  double tol = 0.0;
  double max_abs_eigenvalue = 0.0;
};

/// Standard matrix product. Throws InvalidMatrix on inner-dimension mismatch.
Matrix matmul(const Matrix& a, const Matrix& b);

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// `a` must be square and symmetric to within 1e-10 relative to its largest
/// entry. Handles orders up to several hundred in seconds.
EigenResult sym_eig(const Matrix& a, double tol = 1e-10);

}  // namespace kdda
