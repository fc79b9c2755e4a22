#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kdda/class_index.hpp"
#include "kdda/kernels.hpp"
#include "kdda/matrix.hpp"

namespace kdda {

/// Numbers produced while fitting a KddaModel, kept for auditing. Present on
/// freshly fitted models; not part of the persisted container.
struct KddaFitDiagnostics {
  /// Between-class scatter expressed in the retained whitened basis;
  /// identity to within 1e-6 Frobenius on a successful fit.
  Matrix between_in_basis;
  /// Kept between-class eigenvalues, descending.
  std::vector<double> between_eigenvalues;
  /// Within-class eigenvalues in the whitened basis, ascending, with
  /// negative round-off clamped to zero.
  std::vector<double> within_eigenvalues;
  /// Rank of the between-class scatter (number of whitened directions).
  std::size_t between_rank = 0;
};

/// Kernel discriminant projection: M feature-space directions expanded over
/// the mapped training samples. Immutable once fitted; safe to share across
/// threads for concurrent transforms.
struct KddaModel {
  std::vector<std::vector<double>> train_samples;
  KernelSpec kernel;
  Matrix coeffs;  // L x M expansion coefficients
  std::size_t m_features = 0;
  /// True when the requested M exceeded the between-class rank and was
  /// reduced to it.
  bool m_clamped = false;
  std::optional<KddaFitDiagnostics> diagnostics;
};

/// Kernel PCA baseline: projection coefficients for the double-centered
/// Gram matrix plus the kernel statistics needed to center unseen samples.
struct KpcaModel {
  std::vector<std::vector<double>> train_samples;
  KernelSpec kernel;
  std::optional<Matrix> coeffs;        // L x M; absent when degenerate (M=0)
  std::size_t m_features = 0;          // retained components
  bool m_clamped = false;              // requested M exceeded positive count
  bool degenerate = false;             // no positive eigenvalue at all
  std::vector<double> component_variances;  // eigenvalues of centered Gram / L
  std::vector<double> train_kernel_means;   // (1/L) sum_l k(z_i, z_l) per i
  double train_kernel_mean_all = 0.0;       // (1/L^2) sum_il k(z_i, z_l)
};

/// Fit the kernel discriminant extractor.
///
/// Every feature-space quantity is reached through Gram-matrix identities:
/// the between-class scatter is diagonalized in the C-dimensional span of
/// the class means, whitened over its nonzero eigenvalues, and the
/// within-class scatter is then diagonalized in that whitened basis. The
/// M directions with the smallest within-class eigenvalues lambda_w are
/// kept, rescaled by (1 + lambda_w)^(-1/2); zero within-class eigenvalues
/// are therefore never used as divisors, and the kernel matrix is never
/// (pseudo-)inverted.
///
/// m_features = 0 selects the maximal discriminant subspace (C-1).
/// Throws InvalidConfig if m_features > C-1, InvalidInput if C < 2, and
/// UnsupportedKernel for the sigmoid family.
KddaModel kdda_fit(const std::vector<std::vector<double>>& samples,
                   const ClassIndex& labels, const KernelSpec& kernel,
                   std::size_t m_features = 0);

/// y = coeffs^T k(train, z); length M.
std::vector<double> kdda_transform(const KddaModel& model,
                                   std::span<const double> z);

/// Fit kernel PCA on the double-centered Gram matrix. Components are
/// ordered by descending eigenvalue and scaled by lambda^(-1/2) so a linear
/// kernel reproduces classical PCA projections. M exceeding the count of
/// positive eigenvalues is clamped down and recorded on the model.
KpcaModel kpca_fit(const std::vector<std::vector<double>>& samples,
                   const KernelSpec& kernel, std::size_t m_features);

/// Centered kernel vector of z projected through the stored coefficients;
/// empty for a degenerate model.
std::vector<double> kpca_transform(const KpcaModel& model,
                                   std::span<const double> z);

/// Fit-time projections of the training samples (one row per sample),
/// identical to transforming each training sample.
Matrix training_projections(const KddaModel& model);

}  // namespace kdda
