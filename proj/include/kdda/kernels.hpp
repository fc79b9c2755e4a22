#pragma once

#include <span>
#include <vector>

#include "kdda/matrix.hpp"

namespace kdda {

enum class KernelFamily { linear, polynomial, rbf, sigmoid };

/// Kernel function with its hyperparameters. Only the parameters of the
/// chosen family are meaningful; the rest are ignored.
struct KernelSpec {
  KernelFamily family = KernelFamily::linear;
  double sigma2 = 1.0;   // rbf scale sigma^2, must be > 0
  int degree = 2;        // polynomial degree, must be >= 1
  double offset = 0.0;   // sigmoid offset

  static KernelSpec linear() { return {KernelFamily::linear, 1.0, 2, 0.0}; }
  static KernelSpec polynomial(int degree) {
    return {KernelFamily::polynomial, 1.0, degree, 0.0};
  }
  static KernelSpec rbf(double sigma2) {
    return {KernelFamily::rbf, sigma2, 2, 0.0};
  }
  static KernelSpec sigmoid(double offset) {
    return {KernelFamily::sigmoid, 1.0, 2, offset};
  }

  /// Linear, polynomial and rbf kernels are positive semi-definite; sigmoid
  /// is not and is rejected by the discriminant extractors.
  bool is_psd_family() const { return family != KernelFamily::sigmoid; }

  void validate() const;  // throws InvalidConfig on bad hyperparameters
};

const char* kernel_family_name(KernelFamily family);
KernelFamily kernel_family_from_name(const std::string& name);

/// Evaluate k(x, y):
///   linear      <x,y>
///   polynomial  (<x,y> + 1)^d
///   rbf         exp(-|x-y|^2 / (2 sigma^2))
///   sigmoid     tanh(<x,y> + a)
double eval(const KernelSpec& spec, std::span<const double> x,
            std::span<const double> y);

/// L x L matrix of pairwise kernel values over the samples; exactly
/// symmetric because entry (i,j) is computed once.
Matrix gram_matrix(const KernelSpec& spec,
                   const std::vector<std::vector<double>>& samples);

/// Component i = k(train[i], z); equals row i of the Gram matrix when z is
/// training sample i.
std::vector<double> kernel_vector(const KernelSpec& spec,
                                  const std::vector<std::vector<double>>& train,
                                  std::span<const double> z);

}  // namespace kdda
