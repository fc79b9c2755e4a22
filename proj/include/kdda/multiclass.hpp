#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kdda/class_index.hpp"
#include "kdda/svm.hpp"

namespace kdda {

/// One-vs-rest ensemble: model m separates class m (+1) from all other
/// training data (-1); prediction is the argmax of the k decision values.
struct OvrModel {
  std::vector<SvmModel> models;  // exactly k, class order 1..k
  int num_classes = 0;
};

/// Pairwise-coupling ensemble. One classifier per unordered class pair
/// {i, j} with i < j (i labeled +1, j labeled -1); its mirror image is
/// redundant and never stored. Decision values on each class's training
/// data are summarized by a Gaussian (mean, stddev >= 1e-6).
struct PairwiseModel {
  struct Pair {
    int pos_class = 0;
    int neg_class = 0;
    SvmModel model;
    double mean_pos = 0.0, stddev_pos = 0.0;
    double mean_neg = 0.0, stddev_neg = 0.0;
  };
  std::vector<Pair> pairs;  // k(k-1)/2, ordered (1,2), (1,3), ..., (k-1,k)
  int num_classes = 0;
};

/// Nearest-neighbor baseline over stored feature vectors.
struct NnModel {
  std::vector<std::vector<double>> features;
  std::vector<int> labels;
};

/// Relabeling used by one-vs-rest: +1 for members of `cls`, -1 otherwise.
std::vector<int> binary_labels_for_class(const std::vector<int>& labels,
                                         int cls);

OvrModel ovr_train(const std::vector<std::vector<double>>& features,
                   const ClassIndex& labels, const SvmTrainConfig& cfg);

/// Argmax of the per-class decision values; ties go to the smallest id.
int ovr_predict(const OvrModel& model, std::span<const double> x);

PairwiseModel pairwise_train(const std::vector<std::vector<double>>& features,
                             const ClassIndex& labels,
                             const SvmTrainConfig& cfg);

/// Per pair {i,j}, the fitted Gaussian densities of the decision value give
/// p_ij = g_i / (g_i + g_j) (0.5 if both underflow); class score is the sum
/// of its pairwise probabilities and the argmax wins, ties to smallest id.
int pairwise_predict(const PairwiseModel& model, std::span<const double> x);

/// Per-pair probability that x belongs to the pair's positive class.
double pairwise_probability(const PairwiseModel::Pair& pair,
                            std::span<const double> x);

NnModel nn_train(const std::vector<std::vector<double>>& features,
                 const std::vector<int>& labels);

/// Label of the Euclidean-nearest stored vector; ties go to the vector
/// stored earliest.
int nn_predict(const NnModel& model, std::span<const double> x);

}  // namespace kdda
