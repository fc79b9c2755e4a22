#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "kdda/kernels.hpp"

namespace kdda {

/// Called after every two-variable optimization step with the current dual
/// variables; used by tests to audit feasibility along the whole run.
using SmoObserver = std::function<void(std::span<const double> alpha)>;

struct SvmTrainConfig {
  double c_cost = 10.0;     // box constraint, > 0
  KernelSpec kernel;
  double kkt_tol = 1e-3;    // KKT satisfaction tolerance, > 0
  std::size_t max_passes = 200000;  // cap on two-variable optimization steps
  SmoObserver observer;     // optional, not part of the model

  void validate() const;
};

/// Soft-margin binary SVM as a support-vector expansion:
/// f(x) = sum_i dual_coeffs[i] * k(sv_i, x) + bias, classification sign(f).
struct SvmModel {
  std::vector<std::vector<double>> support_vectors;
  std::vector<double> dual_coeffs;        // alpha_i * y_i, alpha_i in (0, C]
  std::vector<std::size_t> sv_indices;    // positions in the training set
  double bias = 0.0;
  KernelSpec kernel;
  double c_cost = 0.0;   // box constraint the model was trained with
  bool converged = true; // false when max_passes ran out first
};

/// Train by sequential minimal optimization: the pair with the largest KKT
/// violation is optimized analytically until the violation falls below
/// kkt_tol. Deterministic; ties resolve to the smallest index. Labels must
/// be +1/-1 with both present. A run that exhausts max_passes returns the
/// current iterate flagged converged=false.
SvmModel svm_train(const std::vector<std::vector<double>>& samples,
                   const std::vector<int>& labels, const SvmTrainConfig& cfg);

/// Decision value f(x); empty support set yields the bias alone.
double decision(const SvmModel& model, std::span<const double> x);

/// Result of re-checking the KKT conditions of a trained model against its
/// training set.
struct KktAudit {
  bool ok = false;
  double max_violation = 0.0;  // largest KKT residual over all samples
  double sum_alpha_y = 0.0;    // dual equality constraint residual
};

/// Verifies, at tolerance tol: |y f(x) - 1| <= tol for free vectors,
/// y f(x) >= 1 - tol where alpha = 0, y f(x) <= 1 + tol where alpha = C,
/// the box constraint, and |sum alpha_i y_i| <= 1e-8.
KktAudit kkt_audit(const SvmModel& model,
                   const std::vector<std::vector<double>>& samples,
                   const std::vector<int>& labels, double tol);

/// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
double dual_objective(std::span<const double> alpha,
                      const std::vector<int>& labels, const Matrix& gram);

}  // namespace kdda
