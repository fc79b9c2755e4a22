#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kdda/dataset.hpp"
#include "kdda/extractors.hpp"
#include "kdda/kernels.hpp"
#include "kdda/multiclass.hpp"

namespace kdda {

enum class ExtractorKind { kdda, kpca, none };
enum class ClassifierKind { svm_ovr, svm_pairwise, nn };

const char* extractor_name(ExtractorKind kind);
const char* classifier_name(ClassifierKind kind);

/// Everything one experiment needs. The extractor and the SVM carry
/// independent kernels: face-scale inputs want a huge extractor sigma^2
/// while the whitened features behind the SVM live at unit scale.
/// svm_kernel.sigma2 == 0 or c_cost == 0 mean "auto-tune by coarse sweep".
struct ExperimentConfig {
  // Dataset source: image_dir nonempty selects the image tree, otherwise
  // the synthetic rings generator is used.
  std::string image_dir;
  int image_width = 112;
  int image_height = 92;
  int rings_classes = 4;
  int rings_per_class = 50;
  double rings_noise = 0.05;

  ExtractorKind extractor = ExtractorKind::kdda;
  ClassifierKind classifier = ClassifierKind::svm_ovr;

  KernelSpec extractor_kernel = KernelSpec::rbf(5e6);
  KernelSpec svm_kernel = KernelSpec::rbf(0.0);  // sigma2 0 = auto-tune
  double c_cost = 0.0;                           // 0 = auto-tune
  double kkt_tol = 1e-3;
  std::size_t max_passes = 200000;

  std::size_t m_features = 0;          // 0 = C-1
  std::vector<std::size_t> k_train = {5};
  std::size_t repeats = 10;
  std::uint64_t seed = 0;

  // Optional sweep/boundary settings carried in the same config file.
  std::vector<double> sweep_sigma2_values;
  std::vector<std::size_t> sweep_m_values;
  std::size_t boundary_resolution = 50;
  std::optional<double> boundary_x_min, boundary_x_max;
  std::optional<double> boundary_y_min, boundary_y_max;
};

/// Parses plain-text `key = value` lines ('#' comments, blank lines
/// allowed). Unknown keys are errors so typos cannot silently fall back
/// to defaults. See the README for the key list.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// One (k_train, method) cell of a report. Failed repeats are recorded,
/// never fabricated: mean/stddev cover only the successful repeats.
struct MethodResult {
  std::size_t k_train = 0;
  std::string method;
  std::vector<double> per_repeat;       // recognition rates in [0,1]
  std::vector<std::string> failures;    // one message per failed repeat
  double mean_rate = 0.0;
  double stddev = 0.0;                  // population stddev over repeats
};

struct Report {
  std::vector<MethodResult> cells;
  std::vector<std::string> notes;  // e.g. tuned hyperparameters
  double wall_seconds = 0.0;       // measured, never written to CSV

  bool complete() const;           // true when no repeat failed
};

/// A fitted extractor+classifier pair, usable on raw inputs or directly
/// on extracted feature vectors.
struct TrainedPipeline {
  ExtractorKind extractor = ExtractorKind::none;
  std::optional<KddaModel> kdda;
  std::optional<KpcaModel> kpca;
  ClassifierKind classifier = ClassifierKind::nn;
  std::optional<OvrModel> ovr;
  std::optional<PairwiseModel> pairwise;
  std::optional<NnModel> nn;
  std::size_t feature_dim = 0;
  std::vector<std::vector<double>> train_features;  // one row per train sample

  std::vector<double> extract(std::span<const double> x) const;
  int predict_features(std::span<const double> f) const;
  int predict(std::span<const double> x) const;
};

/// Loads the configured dataset (image tree or synthetic rings).
Dataset load_configured_dataset(const ExperimentConfig& cfg);

/// Fits the configured extractor on `train`, then the configured
/// classifier on the extracted training features. Auto-tune sentinels
/// must already be resolved (tuning happens in run_experiment).
TrainedPipeline train_pipeline(const Dataset& train,
                               const ExperimentConfig& cfg);

/// Replaces sigma2/C auto-tune sentinels by the best grid value measured
/// on the first k_train's repeat-0 split, appending one note per tuned
/// value. Deterministic: grid order breaks ties, so identical configs
/// tune identically. No-op for configs that are fully specified or do
/// not use an SVM.
ExperimentConfig resolve_svm_hyperparameters(const Dataset& ds,
                                             const ExperimentConfig& cfg,
                                             std::vector<std::string>* notes);

/// Fraction of test samples whose predicted class matches the label,
/// pooled over all classes.
double recognition_rate(const TrainedPipeline& pipe, const Dataset& test);

/// Runs the configured method over every k_train value with `repeats`
/// random splits (split seed = base seed + repeat index). Deterministic
/// given the config; auto-tunes sentinel SVM hyperparameters first.
Report run_experiment(const ExperimentConfig& cfg);

/// Three-method comparison table: kdda+svm-ovr, kdda+nn and kpca+nn on
/// shared splits, one result cell per (k_train, method).
Report run_table1(const ExperimentConfig& cfg);

struct SweepCurve {
  std::vector<double> param;       // swept value per row
  std::vector<double> mean_error;  // 1 - mean recognition rate
  std::vector<std::string> notes;
};

/// One run_experiment per sigma^2 (first k_train value only), identical
/// seeds, so rows differ only in the SVM kernel width.
SweepCurve sweep_sigma(const ExperimentConfig& cfg,
                       const std::vector<double>& sigma2_values);

/// Same for the retained-feature count M; every M must be <= C-1.
SweepCurve sweep_m(const ExperimentConfig& cfg,
                   const std::vector<std::size_t>& m_values);

struct GridBounds {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
};

/// Classifier predictions over a regular resolution x resolution grid in
/// the 2-D feature plane, as `x,y,predicted_class` CSV rows for external
/// plotting. The pipeline's feature space must be exactly 2-D.
void emit_boundary_grid(const TrainedPipeline& pipe, const GridBounds& bounds,
                        std::size_t resolution, std::ostream& out);

/// Feature-space bounding box of the pipeline's training data plus a 10%
/// margin; the default boundary-grid extent.
GridBounds feature_bounds(const TrainedPipeline& pipe);

/// CSV emission. Reals are printed with std::to_chars shortest-round-trip
/// formatting, so identical runs produce byte-identical files.
void write_report_csv(const Report& report, std::ostream& out);
void write_curve_csv(const SweepCurve& curve, const std::string& param_name,
                     std::ostream& out);

std::string format_real(double v);

}  // namespace kdda
