#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "kdda/class_index.hpp"
#include "kdda/errors.hpp"
#include "kdda/extractors.hpp"
#include "kdda/rng.hpp"
#include "oracles.hpp"

using kdda::ClassIndex;
using kdda::KernelSpec;

namespace {

std::vector<std::vector<double>> project_all(
    const kdda::KddaModel& model,
    const std::vector<std::vector<double>>& points) {
  std::vector<std::vector<double>> out;
  for (const auto& p : points) out.push_back(kdda_transform(model, p));
  return out;
}

}  // namespace

TEST_CASE("kdda matches the explicit D-LDA oracle on linear kernels") {
  kdda::Rng rng(101);
  for (int trial = 0; trial < 6; ++trial) {
    const kdda::Dataset ds = oracle::random_blobs(rng);
    const ClassIndex labels = ClassIndex::from_labels(ds.labels);

    const kdda::KddaModel model =
        kdda::kdda_fit(ds.samples, labels, KernelSpec{}, 0);
    const oracle::DldaOracle ref = oracle::dlda_fit(ds.samples, labels, 0);

    // Probe on training samples plus fresh points.
    std::vector<std::vector<double>> probes = ds.samples;
    for (int i = 0; i < 5; ++i) {
      std::vector<double> p(ds.samples.front().size());
      for (double& v : p) v = 3.0 * rng.gaussian();
      probes.push_back(std::move(p));
    }

    std::vector<std::vector<double>> ours, theirs;
    for (const auto& p : probes) {
      ours.push_back(kdda_transform(model, p));
      theirs.push_back(oracle::dlda_transform(ref, p));
    }
    CHECK(oracle::sign_aware_max_rel_error(theirs, ours) <= 1e-6);
  }
}

TEST_CASE("kdda whitening diagnostics are the identity") {
  kdda::Rng rng(202);
  const kdda::Dataset ds = oracle::random_blobs(rng);
  const ClassIndex labels = ClassIndex::from_labels(ds.labels);
  const kdda::KddaModel model =
      kdda::kdda_fit(ds.samples, labels, KernelSpec::rbf(4.0), 0);

  REQUIRE(model.diagnostics.has_value());
  const kdda::Matrix& sb = model.diagnostics->between_in_basis;
  double worst = 0.0;
  for (std::size_t i = 0; i < sb.rows(); ++i)
    for (std::size_t j = 0; j < sb.cols(); ++j)
      worst = std::max(worst, std::abs(sb(i, j) - (i == j ? 1.0 : 0.0)));
  CHECK(worst <= 1e-6);
}

TEST_CASE("kdda between-class rank is at most C-1") {
  kdda::Rng rng(303);
  const kdda::Dataset ds = oracle::random_blobs(rng);
  const ClassIndex labels = ClassIndex::from_labels(ds.labels);
  for (const KernelSpec spec : {KernelSpec{}, KernelSpec::rbf(2.0),
                                KernelSpec::polynomial(2)}) {
    const kdda::KddaModel model = kdda::kdda_fit(ds.samples, labels, spec, 0);
    CHECK(model.diagnostics->between_rank <=
          static_cast<std::size_t>(labels.num_classes() - 1));
  }
}

TEST_CASE("kdda one sample per class: zero within-class spectrum") {
  const std::vector<std::vector<double>> samples{
      {0.0, 0.0}, {3.0, 0.5}, {-1.0, 2.0}};
  const ClassIndex labels = ClassIndex::from_labels({1, 2, 3});
  const kdda::KddaModel model =
      kdda::kdda_fit(samples, labels, KernelSpec{}, 0);
  for (double lambda : model.diagnostics->within_eigenvalues)
    CHECK(std::abs(lambda) <= 1e-9);
  // Scaling factors are all exactly (0+1)^(-1/2) = 1: projecting the data
  // through coeffs reproduces the whitened between-class basis.
  CHECK(model.m_features == 2);
}

TEST_CASE("kdda rejects bad requests") {
  kdda::Rng rng(404);
  const kdda::Dataset ds = oracle::random_blobs(rng, 4, 3, 4);
  const ClassIndex labels = ClassIndex::from_labels(ds.labels);
  const auto c = static_cast<std::size_t>(labels.num_classes());

  CHECK_THROWS_AS(kdda::kdda_fit(ds.samples, labels, KernelSpec{}, c),
                  kdda::InvalidConfig);
  CHECK_THROWS_AS(
      kdda::kdda_fit(ds.samples, labels, KernelSpec::sigmoid(0.0), 0),
      kdda::UnsupportedKernel);

  const ClassIndex single = ClassIndex::from_labels({1, 1, 1});
  CHECK_THROWS_AS(kdda::kdda_fit({{1.0}, {2.0}, {3.0}}, single, KernelSpec{}, 0),
                  kdda::InvalidInput);

  // All class means coincide: rank-0 between-class scatter.
  const std::vector<std::vector<double>> mirrored{
      {1.0, 0.0}, {-1.0, 0.0}, {0.5, 0.0}, {-0.5, 0.0}};
  const ClassIndex two = ClassIndex::from_labels({1, 1, 2, 2});
  CHECK_THROWS_AS(kdda::kdda_fit(mirrored, two, KernelSpec{}, 0),
                  kdda::InvalidInput);
}

TEST_CASE("kdda transform consistency and separation") {
  kdda::Rng rng(505);
  const kdda::Dataset ds = oracle::random_blobs(rng, 6, 2, 8);
  const ClassIndex labels = ClassIndex::from_labels(ds.labels);
  const kdda::KddaModel model =
      kdda::kdda_fit(ds.samples, labels, KernelSpec::rbf(8.0), 1);

  const kdda::Matrix proj = kdda::training_projections(model);
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    const auto y = kdda::kdda_transform(model, ds.samples[i]);
    REQUIRE(y.size() == 1);
    CHECK(y[0] == doctest::Approx(proj(i, 0)).epsilon(1e-12));
  }

  // Class-conditional means of the 1-D feature separate the two blobs.
  double mean1 = 0.0, mean2 = 0.0;
  std::size_t n1 = 0, n2 = 0;
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    const double y = kdda::kdda_transform(model, ds.samples[i])[0];
    if (ds.labels[i] == 1) {
      mean1 += y;
      ++n1;
    } else {
      mean2 += y;
      ++n2;
    }
  }
  CHECK(std::abs(mean1 / n1 - mean2 / n2) > 1e-6);

  CHECK_THROWS_AS(kdda::kdda_transform(model, std::vector<double>{1.0}),
                  kdda::InvalidInput);
}

TEST_CASE("kdda transform is invariant to training-order permutation") {
  kdda::Rng rng(606);
  const kdda::Dataset ds = oracle::random_blobs(rng, 5, 3, 6);

  // Reverse the sample order (labels move with their samples).
  std::vector<std::vector<double>> reversed_samples(ds.samples.rbegin(),
                                                    ds.samples.rend());
  std::vector<int> reversed_labels(ds.labels.rbegin(), ds.labels.rend());

  const kdda::KddaModel a =
      kdda::kdda_fit(ds.samples, kdda::ClassIndex::from_labels(ds.labels),
                     KernelSpec::rbf(6.0), 0);
  const kdda::KddaModel b = kdda::kdda_fit(
      reversed_samples, kdda::ClassIndex::from_labels(reversed_labels),
      KernelSpec::rbf(6.0), 0);

  std::vector<std::vector<double>> probes;
  for (int i = 0; i < 8; ++i) {
    std::vector<double> p(ds.samples.front().size());
    for (double& v : p) v = 2.0 * rng.gaussian();
    probes.push_back(std::move(p));
  }
  CHECK(oracle::sign_aware_max_rel_error(project_all(a, probes),
                                         project_all(b, probes)) <= 1e-6);
}

TEST_CASE("kdda clamps M to the between-class rank") {
  // Two of the three class means coincide in feature space: rank 1 < C-1.
  const std::vector<std::vector<double>> samples{
      {1.0, 0.0}, {-1.0, 0.0},   // class 1, mean (0,0)
      {0.5, 0.0}, {-0.5, 0.0},   // class 2, mean (0,0) as well
      {2.0, 1.0}, {2.0, -1.0}};  // class 3, mean (2,0)
  const ClassIndex labels = ClassIndex::from_labels({1, 1, 2, 2, 3, 3});
  const kdda::KddaModel model =
      kdda::kdda_fit(samples, labels, KernelSpec{}, 2);
  CHECK(model.m_clamped);
  CHECK(model.m_features == 1);
}

TEST_CASE("kpca matches classical PCA through the linear kernel") {
  kdda::Rng rng(707);
  for (int trial = 0; trial < 4; ++trial) {
    const kdda::Dataset ds = oracle::random_blobs(rng);
    const std::size_t m = 2;

    const kdda::KpcaModel model = kdda::kpca_fit(ds.samples, KernelSpec{}, m);
    const oracle::PcaOracle ref = oracle::pca_fit(ds.samples, m);

    std::vector<std::vector<double>> probes = ds.samples;
    for (int i = 0; i < 4; ++i) {
      std::vector<double> p(ds.samples.front().size());
      for (double& v : p) v = 2.0 * rng.gaussian();
      probes.push_back(std::move(p));
    }

    std::vector<std::vector<double>> ours, theirs;
    for (const auto& p : probes) {
      ours.push_back(kdda::kpca_transform(model, p));
      theirs.push_back(oracle::pca_transform(ref, p));
    }
    CHECK(oracle::sign_aware_max_rel_error(theirs, ours) <= 1e-6);

    // Component variances match the covariance eigenvalues.
    for (std::size_t j = 0; j < m; ++j)
      CHECK(model.component_variances[j] ==
            doctest::Approx(ref.variances[j]).epsilon(1e-8));
  }
}

TEST_CASE("kpca duplicated dataset keeps principal directions") {
  kdda::Rng rng(808);
  std::vector<std::vector<double>> base;
  for (int i = 0; i < 5; ++i)
    base.push_back({rng.gaussian(), 0.3 * rng.gaussian(), rng.gaussian()});
  std::vector<std::vector<double>> doubled = base;
  doubled.insert(doubled.end(), base.begin(), base.end());

  const kdda::KpcaModel a = kdda::kpca_fit(base, KernelSpec{}, 2);
  const kdda::KpcaModel b = kdda::kpca_fit(doubled, KernelSpec{}, 2);

  std::vector<std::vector<double>> pa, pb;
  for (const auto& p : base) {
    pa.push_back(kdda::kpca_transform(a, p));
    pb.push_back(kdda::kpca_transform(b, p));
  }
  CHECK(oracle::sign_aware_max_rel_error(pa, pb) <= 1e-6);
}

TEST_CASE("kpca constant data degenerates to zero components") {
  const std::vector<std::vector<double>> same(6, std::vector<double>{2.0, -1.0});
  const kdda::KpcaModel model = kdda::kpca_fit(same, KernelSpec{}, 3);
  CHECK(model.degenerate);
  CHECK(model.m_clamped);
  CHECK(model.m_features == 0);
  CHECK(kdda::kpca_transform(model, std::vector<double>{2.0, -1.0}).empty());
}

TEST_CASE("kpca projections are centered and consistent") {
  kdda::Rng rng(909);
  const kdda::Dataset ds = oracle::random_blobs(rng, 4, 2, 8);
  const kdda::KpcaModel model =
      kdda::kpca_fit(ds.samples, KernelSpec::rbf(3.0), 3);

  std::vector<double> sums(model.m_features, 0.0);
  for (const auto& s : ds.samples) {
    const auto y = kdda::kpca_transform(model, s);
    for (std::size_t j = 0; j < y.size(); ++j) sums[j] += y[j];
  }
  for (double s : sums)
    CHECK(std::abs(s / static_cast<double>(ds.samples.size())) <= 1e-8);

  // Eigenvalue ordering and nonnegativity.
  for (std::size_t j = 0; j + 1 < model.component_variances.size(); ++j)
    CHECK(model.component_variances[j] >= model.component_variances[j + 1]);
  for (double v : model.component_variances) CHECK(v >= 0.0);

  CHECK_THROWS_AS(kdda::kpca_transform(model, std::vector<double>{0.0}),
                  kdda::InvalidInput);
  CHECK_THROWS_AS(
      kdda::kpca_fit(ds.samples, KernelSpec::sigmoid(0.0), 2),
      kdda::UnsupportedKernel);
}
