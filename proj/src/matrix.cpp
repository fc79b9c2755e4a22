#include "kdda/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kdda {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0)
    throw InvalidMatrix("matrix dimensions must be at least 1x1");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0)
    throw InvalidMatrix("matrix dimensions must be at least 1x1");
  if (data_.size() != rows * cols)
    throw InvalidMatrix("entry count does not match rows*cols");
  check_finite();
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void Matrix::check_finite() const {
  for (double v : data_)
    if (!std::isfinite(v))
      throw InvalidMatrix("matrix contains a non-finite entry");
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw InvalidMatrix("matmul: inner dimensions do not match");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  out.check_finite();
  return out;
}

bool EigenResult::negligible(std::size_t j) const {
  // <= so that an all-zero spectrum (max 0) still reports negligible.
  return std::abs(eigenvalues[j]) <= tol * max_abs_eigenvalue;
}

namespace {

double max_abs_entry(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_offdiag(const Matrix& a) {
  double m = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      m = std::max(m, std::abs(a(p, q)));
  return m;
}

}  // namespace

EigenResult sym_eig(const Matrix& a, double tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InvalidMatrix("sym_eig: matrix is not square");
  a.check_finite();
  const double scale = max_abs_entry(a);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      if (std::abs(a(p, q) - a(q, p)) > 1e-10 * std::max(scale, 1e-300))
        throw InvalidMatrix("sym_eig: matrix is not symmetric");

  // Work on the symmetrized copy; accumulate rotations in v.
  Matrix b(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) b(p, q) = 0.5 * (a(p, q) + a(q, p));
  Matrix v = Matrix::identity(n);

  const double stop = 1e-14 * std::max(scale, 0.0);
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (max_abs_offdiag(b) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = b(p, q);
        if (std::abs(apq) <= stop * 1e-2) continue;
        const double theta = (b(q, q) - b(p, p)) / (2.0 * apq);
        double t;  // tan of the rotation angle, smaller root
        if (theta >= 0.0)
          t = 1.0 / (theta + std::sqrt(1.0 + theta * theta));
        else
          t = -1.0 / (-theta + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double bkp = b(k, p), bkq = b(k, q);
          b(k, p) = c * bkp - s * bkq;
          b(k, q) = s * bkp + c * bkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double bpk = b(p, k), bqk = b(q, k);
          b(p, k) = c * bpk - s * bqk;
          b(q, k) = s * bpk + c * bqk;
        }
        b(p, q) = 0.0;
        b(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  // Sort descending by eigenvalue; stable so equal eigenvalues keep the
  // Jacobi output order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return b(i, i) > b(j, j);
  });

  EigenResult result{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    result.eigenvalues[j] = b(src, src);
    double norm = 0.0;
    for (std::size_t k = 0; k < n; ++k) norm += v(k, src) * v(k, src);
    norm = std::sqrt(norm);
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(v(k, src)) > 1e-12) {
        sign = v(k, src) > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t k = 0; k < n; ++k)
      result.eigenvectors(k, j) = v(k, src) * sign / norm;
  }
  result.tol = tol;
  result.max_abs_eigenvalue = 0.0;
  for (double ev : result.eigenvalues)
    result.max_abs_eigenvalue =
        std::max(result.max_abs_eigenvalue, std::abs(ev));
  return result;
}

}  // namespace kdda
