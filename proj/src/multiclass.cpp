#include "kdda/multiclass.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kdda/errors.hpp"

namespace kdda {

namespace {

constexpr double kStddevFloor = 1e-6;
constexpr double kPi = 3.14159265358979323846;

void check_features(const std::vector<std::vector<double>>& features,
                    std::size_t expected_count) {
  if (features.size() != expected_count) {
    throw InvalidInput("feature count " + std::to_string(features.size()) +
                       " does not match label count " +
                       std::to_string(expected_count));
  }
  if (features.empty()) throw InvalidInput("no feature vectors");
  const std::size_t dim = features.front().size();
  if (dim == 0) throw InvalidInput("feature vectors are empty");
  for (const auto& f : features) {
    if (f.size() != dim) {
      throw InvalidInput("feature vectors have inconsistent dimensions");
    }
  }
}

/// Mean and population standard deviation (the 1/n variant), with the
/// stddev floored so the Gaussian density never divides by zero.
void gaussian_stats(const std::vector<double>& values, double* mean,
                    double* stddev) {
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mu = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  double sd = std::sqrt(ss / static_cast<double>(values.size()));
  if (sd < kStddevFloor) sd = kStddevFloor;
  *mean = mu;
  *stddev = sd;
}

double gaussian_density(double x, double mean, double stddev) {
  const double z = (x - mean) / stddev;
  return std::exp(-0.5 * z * z) / (stddev * std::sqrt(2.0 * kPi));
}

}  // namespace

std::vector<int> binary_labels_for_class(const std::vector<int>& labels,
                                         int cls) {
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = labels[i] == cls ? +1 : -1;
  }
  return out;
}

OvrModel ovr_train(const std::vector<std::vector<double>>& features,
                   const ClassIndex& labels, const SvmTrainConfig& cfg) {
  check_features(features, labels.total());
  const int k = labels.num_classes();
  if (k < 2) throw InvalidInput("one-vs-rest needs at least two classes");

  OvrModel model;
  model.num_classes = k;
  model.models.reserve(static_cast<std::size_t>(k));
  for (int cls = 1; cls <= k; ++cls) {
    const std::vector<int> binary = binary_labels_for_class(labels.labels(), cls);
    try {
      model.models.push_back(svm_train(features, binary, cfg));
    } catch (const Error& e) {
      throw InvalidInput("class " + std::to_string(cls) + ": " + e.what());
    }
  }
  return model;
}

int ovr_predict(const OvrModel& model, std::span<const double> x) {
  if (model.models.empty()) throw InvalidInput("one-vs-rest model is empty");
  int best = 1;
  double best_value = decision(model.models.front(), x);
  for (int cls = 2; cls <= model.num_classes; ++cls) {
    const double value =
        decision(model.models[static_cast<std::size_t>(cls - 1)], x);
    if (value > best_value) {  // strict: ties keep the smaller class id
      best_value = value;
      best = cls;
    }
  }
  return best;
}

PairwiseModel pairwise_train(const std::vector<std::vector<double>>& features,
                             const ClassIndex& labels,
                             const SvmTrainConfig& cfg) {
  check_features(features, labels.total());
  const int k = labels.num_classes();
  if (k < 2) throw InvalidInput("pairwise coupling needs at least two classes");

  PairwiseModel model;
  model.num_classes = k;
  model.pairs.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
  for (int i = 1; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      // Train on just the two classes' samples, i as +1 and j as -1.
      std::vector<std::vector<double>> pair_features;
      std::vector<int> pair_labels;
      std::vector<std::size_t> pos_rows, neg_rows;
      for (std::size_t row : labels.members(i)) {
        pos_rows.push_back(pair_features.size());
        pair_features.push_back(features[row]);
        pair_labels.push_back(+1);
      }
      for (std::size_t row : labels.members(j)) {
        neg_rows.push_back(pair_features.size());
        pair_features.push_back(features[row]);
        pair_labels.push_back(-1);
      }

      PairwiseModel::Pair pair;
      pair.pos_class = i;
      pair.neg_class = j;
      try {
        pair.model = svm_train(pair_features, pair_labels, cfg);
      } catch (const Error& e) {
        throw InvalidInput("pair (" + std::to_string(i) + "," +
                           std::to_string(j) + "): " + e.what());
      }

      std::vector<double> pos_values, neg_values;
      pos_values.reserve(pos_rows.size());
      neg_values.reserve(neg_rows.size());
      for (std::size_t row : pos_rows) {
        pos_values.push_back(decision(pair.model, pair_features[row]));
      }
      for (std::size_t row : neg_rows) {
        neg_values.push_back(decision(pair.model, pair_features[row]));
      }
      gaussian_stats(pos_values, &pair.mean_pos, &pair.stddev_pos);
      gaussian_stats(neg_values, &pair.mean_neg, &pair.stddev_neg);
      model.pairs.push_back(std::move(pair));
    }
  }
  return model;
}

double pairwise_probability(const PairwiseModel::Pair& pair,
                            std::span<const double> x) {
  const double value = decision(pair.model, x);
  const double g_pos = gaussian_density(value, pair.mean_pos, pair.stddev_pos);
  const double g_neg = gaussian_density(value, pair.mean_neg, pair.stddev_neg);
  const double total = g_pos + g_neg;
  if (total <= 0.0 || !std::isfinite(total)) return 0.5;
  return g_pos / total;
}

int pairwise_predict(const PairwiseModel& model, std::span<const double> x) {
  if (model.pairs.empty()) throw InvalidInput("pairwise model is empty");
  std::vector<double> score(static_cast<std::size_t>(model.num_classes), 0.0);
  for (const auto& pair : model.pairs) {
    const double p = pairwise_probability(pair, x);
    score[static_cast<std::size_t>(pair.pos_class - 1)] += p;
    score[static_cast<std::size_t>(pair.neg_class - 1)] += 1.0 - p;
  }
  int best = 1;
  for (int cls = 2; cls <= model.num_classes; ++cls) {
    if (score[static_cast<std::size_t>(cls - 1)] >
        score[static_cast<std::size_t>(best - 1)]) {
      best = cls;
    }
  }
  return best;
}

NnModel nn_train(const std::vector<std::vector<double>>& features,
                 const std::vector<int>& labels) {
  check_features(features, labels.size());
  NnModel model;
  model.features = features;
  model.labels = labels;
  return model;
}

int nn_predict(const NnModel& model, std::span<const double> x) {
  if (model.features.empty()) {
    throw InvalidInput("nearest-neighbor model is empty");
  }
  std::size_t best = 0;
  double best_dist = -1.0;
  for (std::size_t i = 0; i < model.features.size(); ++i) {
    const auto& f = model.features[i];
    if (f.size() != x.size()) {
      throw InvalidInput("query dimension does not match stored vectors");
    }
    double dist = 0.0;
    for (std::size_t d = 0; d < f.size(); ++d) {
      const double diff = f[d] - x[d];
      dist += diff * diff;
    }
    if (best_dist < 0.0 || dist < best_dist) {  // strict: earliest index wins
      best_dist = dist;
      best = i;
    }
  }
  return model.labels[best];
}

}  // namespace kdda
