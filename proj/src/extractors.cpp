#include "kdda/extractors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace kdda {

namespace {

constexpr double kRankTol = 1e-10;  // relative eigenvalue cutoff

void check_uniform_samples(const std::vector<std::vector<double>>& samples) {
  if (samples.empty()) throw InvalidInput("extractor fit: no samples");
  const std::size_t dim = samples.front().size();
  if (dim == 0) throw InvalidInput("extractor fit: zero-dimensional samples");
  for (const auto& s : samples) {
    if (s.size() != dim)
      throw InvalidInput("extractor fit: samples have mixed dimensions");
    for (double v : s)
      if (!std::isfinite(v))
        throw InvalidInput("extractor fit: non-finite sample entry");
  }
}

// Class-average operator applied to the rows of x: row i of the result is
// the mean of x's rows over the class sample i belongs to. Equivalent to
// G*x with G = E diag(1/C_i) E^T, without materializing G.
Matrix class_average_rows(const Matrix& x, const ClassIndex& idx) {
  const int c_count = idx.num_classes();
  const std::size_t cols = x.cols();
  Matrix sums(static_cast<std::size_t>(c_count), cols);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const std::size_t c = static_cast<std::size_t>(idx.labels()[i] - 1);
    for (std::size_t j = 0; j < cols; ++j) sums(c, j) += x(i, j);
  }
  Matrix out(x.rows(), cols);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const std::size_t c = static_cast<std::size_t>(idx.labels()[i] - 1);
    const double inv =
        1.0 / static_cast<double>(idx.class_sizes()[c]);
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = sums(c, j) * inv;
  }
  return out;
}

}  // namespace

KddaModel kdda_fit(const std::vector<std::vector<double>>& samples,
                   const ClassIndex& labels, const KernelSpec& kernel,
                   std::size_t m_features) {
  check_uniform_samples(samples);
  if (labels.total() != samples.size())
    throw InvalidInput("kdda_fit: label count does not match sample count");
  if (!kernel.is_psd_family())
    throw UnsupportedKernel(
        "kdda_fit: sigmoid kernel is not positive semi-definite");
  const std::size_t total = labels.total();
  const int c_count = labels.num_classes();
  if (c_count < 2) throw InvalidInput("kdda_fit: need at least 2 classes");
  const std::size_t max_m = static_cast<std::size_t>(c_count - 1);
  if (m_features == 0) m_features = max_m;
  if (m_features > max_m)
    throw InvalidConfig("kdda_fit: m_features exceeds C-1 = " +
                        std::to_string(max_m));

  const Matrix gram = gram_matrix(kernel, samples);

  // W spans the class-mean deviations: column c is
  // sqrt(C_c/L) * (class-mean coefficients - ensemble-mean coefficients),
  // so the between-class scatter is (Phi W)(Phi W)^T in feature space and
  // W^T K W in the expansion basis.
  Matrix w(total, static_cast<std::size_t>(c_count));
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t ci = static_cast<std::size_t>(labels.labels()[i] - 1);
    for (std::size_t c = 0; c < static_cast<std::size_t>(c_count); ++c) {
      const double class_coef =
          (c == ci) ? 1.0 / static_cast<double>(labels.class_sizes()[c]) : 0.0;
      const double scale = std::sqrt(
          static_cast<double>(labels.class_sizes()[c]) /
          static_cast<double>(total));
      w(i, c) = (class_coef - 1.0 / static_cast<double>(total)) * scale;
    }
  }

  const Matrix kw = matmul(gram, w);                    // L x C
  const Matrix sb = matmul(w.transposed(), kw);         // C x C
  const EigenResult sb_eig = sym_eig(sb, kRankTol);

  const double lambda_max = sb_eig.max_abs_eigenvalue;
  if (!(lambda_max > 0.0) ||
      sb_eig.eigenvalues.front() <= kRankTol * lambda_max)
    throw InvalidInput(
        "kdda_fit: between-class scatter has rank 0 (all class means "
        "coincide in feature space)");
  std::size_t rank = 0;
  while (rank < sb_eig.eigenvalues.size() &&
         sb_eig.eigenvalues[rank] > kRankTol * lambda_max)
    ++rank;

  bool clamped = false;
  if (m_features > rank) {
    m_features = rank;
    clamped = true;
  }

  // Whitening: Q = W E_m Lambda_b^(-1), so that the between-class scatter
  // expressed in the basis Phi*Q is the identity.
  Matrix q(total, rank);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < rank; ++j) {
      double acc = 0.0;
      for (std::size_t c = 0; c < static_cast<std::size_t>(c_count); ++c)
        acc += w(i, c) * sb_eig.eigenvectors(c, j);
      q(i, j) = acc / sb_eig.eigenvalues[j];
    }

  // Within-class scatter in the whitened basis:
  // Sw = (1/L) Q^T K (I - G) K Q = (1/L) Cw^T Cw with Cw = (I - G) K Q,
  // which keeps Sw symmetric PSD by construction.
  const Matrix kq = matmul(gram, q);  // L x m
  const Matrix kq_class_avg = class_average_rows(kq, labels);
  Matrix cw(total, rank);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      cw(i, j) = kq(i, j) - kq_class_avg(i, j);
  Matrix sw(rank, rank);
  for (std::size_t a = 0; a < rank; ++a)
    for (std::size_t b = a; b < rank; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < total; ++i) acc += cw(i, a) * cw(i, b);
      sw(a, b) = sw(b, a) = acc / static_cast<double>(total);
    }

  const EigenResult sw_eig = sym_eig(sw, kRankTol);

  // Ascending within-class eigenvalues: reverse the descending output.
  std::vector<double> within(rank);
  for (std::size_t j = 0; j < rank; ++j) {
    const std::size_t src = rank - 1 - j;
    within[j] = std::max(sw_eig.eigenvalues[src], 0.0);
  }

  // Final directions: the m_features smallest within-class eigenvalues,
  // rescaled by (1 + lambda_w)^(-1/2). Finite even at lambda_w = 0.
  Matrix coeffs(total, m_features);
  for (std::size_t j = 0; j < m_features; ++j) {
    const std::size_t src = rank - 1 - j;
    const double scale = 1.0 / std::sqrt(1.0 + within[j]);
    for (std::size_t i = 0; i < total; ++i) {
      double acc = 0.0;
      for (std::size_t a = 0; a < rank; ++a)
        acc += q(i, a) * sw_eig.eigenvectors(a, src);
      coeffs(i, j) = acc * scale;
    }
  }
  coeffs.check_finite();

  KddaFitDiagnostics diag{Matrix(rank, rank),
                          std::vector<double>(sb_eig.eigenvalues.begin(),
                                              sb_eig.eigenvalues.begin() +
                                                  static_cast<long>(rank)),
                          within, rank};
  // T = W^T K Q has orthonormal columns when the whitening is right;
  // store T^T T as the audit matrix.
  const Matrix t = matmul(kw.transposed(), q);  // C x m
  for (std::size_t a = 0; a < rank; ++a)
    for (std::size_t b = 0; b < rank; ++b) {
      double acc = 0.0;
      for (std::size_t c = 0; c < static_cast<std::size_t>(c_count); ++c)
        acc += t(c, a) * t(c, b);
      diag.between_in_basis(a, b) = acc;
    }

  KddaModel model{samples, kernel, std::move(coeffs), m_features, clamped,
                  std::move(diag)};
  return model;
}

std::vector<double> kdda_transform(const KddaModel& model,
                                   std::span<const double> z) {
  if (model.train_samples.empty() ||
      z.size() != model.train_samples.front().size())
    throw InvalidInput("kdda_transform: dimension mismatch");
  const std::vector<double> kv =
      kernel_vector(model.kernel, model.train_samples, z);
  std::vector<double> out(model.m_features, 0.0);
  for (std::size_t i = 0; i < kv.size(); ++i)
    for (std::size_t j = 0; j < model.m_features; ++j)
      out[j] += model.coeffs(i, j) * kv[i];
  for (double v : out)
    if (!std::isfinite(v))
      throw InvalidInput("kdda_transform: non-finite projection");
  return out;
}

Matrix training_projections(const KddaModel& model) {
  const std::size_t total = model.train_samples.size();
  Matrix out(total, model.m_features);
  for (std::size_t i = 0; i < total; ++i) {
    const std::vector<double> y =
        kdda_transform(model, model.train_samples[i]);
    for (std::size_t j = 0; j < model.m_features; ++j) out(i, j) = y[j];
  }
  return out;
}

KpcaModel kpca_fit(const std::vector<std::vector<double>>& samples,
                   const KernelSpec& kernel, std::size_t m_features) {
  check_uniform_samples(samples);
  if (!kernel.is_psd_family())
    throw UnsupportedKernel(
        "kpca_fit: sigmoid kernel is not positive semi-definite");
  const std::size_t total = samples.size();
  if (m_features > total)
    throw InvalidConfig("kpca_fit: m_features exceeds sample count");

  const Matrix gram = gram_matrix(kernel, samples);

  std::vector<double> row_means(total, 0.0);
  double mean_all = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < total; ++j) s += gram(i, j);
    row_means[i] = s / static_cast<double>(total);
    mean_all += s;
  }
  mean_all /= static_cast<double>(total) * static_cast<double>(total);

  Matrix centered(total, total);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      centered(i, j) = gram(i, j) - row_means[i] - row_means[j] + mean_all;

  const EigenResult eig = sym_eig(centered, kRankTol);

  // A positive eigenvalue must clear both the relative rank cutoff and the
  // Gram matrix's own scale, so constant data (centered Gram ~ round-off)
  // yields zero components rather than noise directions.
  double trace_scale = 0.0;
  for (std::size_t i = 0; i < total; ++i) trace_scale += gram(i, i);
  trace_scale /= static_cast<double>(total);
  const double cutoff =
      kRankTol * std::max(eig.max_abs_eigenvalue, std::abs(trace_scale));

  std::size_t positive = 0;
  while (positive < total && eig.eigenvalues[positive] > cutoff) ++positive;

  KpcaModel model;
  model.train_samples = samples;
  model.kernel = kernel;
  model.train_kernel_means = row_means;
  model.train_kernel_mean_all = mean_all;
  model.degenerate = positive == 0;
  model.m_clamped = m_features > positive;
  model.m_features = std::min(m_features, positive);
  model.component_variances.resize(model.m_features);
  for (std::size_t j = 0; j < model.m_features; ++j)
    model.component_variances[j] =
        eig.eigenvalues[j] / static_cast<double>(total);

  if (model.m_features > 0) {
    Matrix coeffs(total, model.m_features);
    for (std::size_t j = 0; j < model.m_features; ++j) {
      const double scale = 1.0 / std::sqrt(eig.eigenvalues[j]);
      for (std::size_t i = 0; i < total; ++i)
        coeffs(i, j) = eig.eigenvectors(i, j) * scale;
    }
    model.coeffs = std::move(coeffs);
  }
  return model;
}

std::vector<double> kpca_transform(const KpcaModel& model,
                                   std::span<const double> z) {
  if (model.train_samples.empty() ||
      z.size() != model.train_samples.front().size())
    throw InvalidInput("kpca_transform: dimension mismatch");
  if (model.m_features == 0) return {};

  const std::size_t total = model.train_samples.size();
  std::vector<double> kv = kernel_vector(model.kernel, model.train_samples, z);
  double kv_mean = 0.0;
  for (double v : kv) kv_mean += v;
  kv_mean /= static_cast<double>(total);
  for (std::size_t i = 0; i < total; ++i)
    kv[i] += model.train_kernel_mean_all - kv_mean - model.train_kernel_means[i];

  const Matrix& coeffs = *model.coeffs;
  std::vector<double> out(model.m_features, 0.0);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < model.m_features; ++j)
      out[j] += coeffs(i, j) * kv[i];
  return out;
}

}  // namespace kdda
