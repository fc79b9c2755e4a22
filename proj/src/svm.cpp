#include "kdda/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kdda {

void SvmTrainConfig::validate() const {
  if (!(c_cost > 0.0) || !std::isfinite(c_cost))
    throw InvalidConfig("svm: c_cost must be positive");
  if (!(kkt_tol > 0.0) || !std::isfinite(kkt_tol))
    throw InvalidConfig("svm: kkt_tol must be positive");
  if (max_passes == 0) throw InvalidConfig("svm: max_passes must be >= 1");
  kernel.validate();
}

namespace {

// Per-sample bias estimate u_i = y_i - sum_j alpha_j y_j K_ij. Samples that
// may still move up bound b from below (lower set), samples that may move
// down bound it from above (upper set); the maximal KKT violation is the gap
// between the two bounds.
struct ViolationScan {
  double b_low = -std::numeric_limits<double>::infinity();
  double b_high = std::numeric_limits<double>::infinity();
  std::size_t arg_low = 0;
  std::size_t arg_high = 0;
};

ViolationScan scan_violation(const std::vector<double>& alpha,
                             const std::vector<int>& labels,
                             const std::vector<double>& grad, double c) {
  ViolationScan s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double u = -labels[i] * grad[i];
    const bool in_lower = (labels[i] > 0 && alpha[i] < c) ||
                          (labels[i] < 0 && alpha[i] > 0.0);
    const bool in_upper = (labels[i] < 0 && alpha[i] < c) ||
                          (labels[i] > 0 && alpha[i] > 0.0);
    if (in_lower && u > s.b_low) {
      s.b_low = u;
      s.arg_low = i;
    }
    if (in_upper && u < s.b_high) {
      s.b_high = u;
      s.arg_high = i;
    }
  }
  return s;
}

}  // namespace

SvmModel svm_train(const std::vector<std::vector<double>>& samples,
                   const std::vector<int>& labels, const SvmTrainConfig& cfg) {
  cfg.validate();
  if (samples.size() < 2) throw InvalidInput("svm_train: need >= 2 samples");
  if (labels.size() != samples.size())
    throw InvalidInput("svm_train: label count does not match sample count");
  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw InvalidInput("svm_train: labels must be +1 or -1");
  }
  if (!has_pos || !has_neg)
    throw InvalidInput("svm_train: both classes must be present");
  for (const auto& s : samples)
    for (double v : s)
      if (!std::isfinite(v))
        throw InvalidInput("svm_train: non-finite sample entry");

  const std::size_t n = samples.size();
  const double c = cfg.c_cost;
  // Problem sizes here keep the full Gram matrix comfortably in memory.
  const Matrix gram = gram_matrix(cfg.kernel, samples);

  std::vector<double> alpha(n, 0.0);
  // Gradient of 1/2 a^T Q a - sum(a) with Q_ij = y_i y_j K_ij; starts at -1.
  std::vector<double> grad(n, -1.0);

  bool converged = false;
  ViolationScan scan;
  for (std::size_t pass = 0; pass < cfg.max_passes; ++pass) {
    scan = scan_violation(alpha, labels, grad, c);
    if (scan.b_low - scan.b_high <= cfg.kkt_tol) {
      converged = true;
      break;
    }
    const std::size_t i = scan.arg_low;
    const std::size_t j = scan.arg_high;
    const int yi = labels[i], yj = labels[j];

    double eta = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
    if (eta <= 1e-12) eta = 1e-12;  // non-PSD kernels or duplicate points

    // Step t moves alpha_i by +y_i t and alpha_j by -y_j t, preserving the
    // equality constraint; membership in the scan sets guarantees room.
    const double room_i = yi > 0 ? c - alpha[i] : alpha[i];
    const double room_j = yj > 0 ? alpha[j] : c - alpha[j];
    const double t =
        std::min({(scan.b_low - scan.b_high) / eta, room_i, room_j});
    if (!(t > 0.0)) {
      converged = false;  // numerically stuck; report honestly
      break;
    }

    // Land exactly on a bound when the step is bound-limited, so the
    // free/at-bound split stays exact.
    if (t == room_i)
      alpha[i] = yi > 0 ? c : 0.0;
    else
      alpha[i] += yi > 0 ? t : -t;
    if (t == room_j)
      alpha[j] = yj > 0 ? 0.0 : c;
    else
      alpha[j] -= yj > 0 ? t : -t;
    for (std::size_t k = 0; k < n; ++k)
      grad[k] += labels[k] * t * (gram(k, i) - gram(k, j));

    if (cfg.observer) cfg.observer(alpha);
  }
  if (!converged) scan = scan_violation(alpha, labels, grad, c);

  // Bias: mean of u_i over free vectors; with none free, the midpoint of
  // the interval the bound vectors leave feasible.
  double bias;
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] > 0.0 && alpha[i] < c) {
      free_sum += -labels[i] * grad[i];
      ++free_count;
    }
  }
  if (free_count > 0)
    bias = free_sum / static_cast<double>(free_count);
  else
    bias = 0.5 * (scan.b_low + scan.b_high);

  SvmModel model;
  model.kernel = cfg.kernel;
  model.c_cost = c;
  model.bias = bias;
  model.converged = converged;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] > 0.0) {
      model.support_vectors.push_back(samples[i]);
      model.dual_coeffs.push_back(alpha[i] * labels[i]);
      model.sv_indices.push_back(i);
    }
  }
  return model;
}

double decision(const SvmModel& model, std::span<const double> x) {
  double f = model.bias;
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i)
    f += model.dual_coeffs[i] * eval(model.kernel, model.support_vectors[i], x);
  if (!std::isfinite(f)) throw InvalidInput("svm decision: non-finite value");
  return f;
}

KktAudit kkt_audit(const SvmModel& model,
                   const std::vector<std::vector<double>>& samples,
                   const std::vector<int>& labels, double tol) {
  KktAudit audit;
  std::vector<double> alpha(samples.size(), 0.0);
  for (std::size_t k = 0; k < model.sv_indices.size(); ++k) {
    const std::size_t i = model.sv_indices[k];
    if (i >= samples.size()) throw InvalidInput("kkt_audit: stale sv index");
    alpha[i] = std::abs(model.dual_coeffs[k]);
    audit.sum_alpha_y += model.dual_coeffs[k];
  }

  const double c = model.c_cost;
  double worst = 0.0;
  bool box_ok = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (alpha[i] < 0.0 || alpha[i] > c * (1.0 + 1e-12)) box_ok = false;
    const double margin = labels[i] * decision(model, samples[i]);
    double residual = 0.0;
    if (alpha[i] <= 0.0)
      residual = std::max(0.0, 1.0 - margin);
    else if (alpha[i] >= c)
      residual = std::max(0.0, margin - 1.0);
    else
      residual = std::abs(margin - 1.0);
    worst = std::max(worst, residual);
  }
  audit.max_violation = worst;
  audit.ok = box_ok && worst <= tol && std::abs(audit.sum_alpha_y) <= 1e-8;
  return audit;
}

double dual_objective(std::span<const double> alpha,
                      const std::vector<int>& labels, const Matrix& gram) {
  double linear = 0.0, quad = 0.0;
  const std::size_t n = alpha.size();
  for (std::size_t i = 0; i < n; ++i) {
    linear += alpha[i];
    for (std::size_t j = 0; j < n; ++j)
      quad += alpha[i] * alpha[j] * labels[i] * labels[j] * gram(i, j);
  }
  return linear - 0.5 * quad;
}

}  // namespace kdda
