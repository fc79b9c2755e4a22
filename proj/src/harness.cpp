#include "kdda/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "kdda/class_index.hpp"
#include "kdda/errors.hpp"

namespace kdda {

namespace {

// Coarse auto-tune grids for the SVM kernel width and box constraint.
// Whitened discriminant features live at unit scale, so the widths span
// a few decades around 1 rather than image-pixel magnitudes.
const double kSigmaGrid[] = {0.0625, 0.25, 1.0, 4.0, 16.0, 64.0, 256.0, 1024.0};
const double kCostGrid[] = {1.0, 10.0, 100.0};

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

long parse_long(const std::string& value, const std::string& key) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty()) {
    throw InvalidConfig("key '" + key + "': expected an integer, got '" +
                        value + "'");
  }
  return v;
}

double parse_real(const std::string& value, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty()) {
    throw InvalidConfig("key '" + key + "': expected a real, got '" + value +
                        "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty() || value.front() == '-') {
    throw InvalidConfig("key '" + key +
                        "': expected an unsigned integer, got '" + value + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

ExtractorKind extractor_from_name(const std::string& name) {
  if (name == "kdda") return ExtractorKind::kdda;
  if (name == "kpca") return ExtractorKind::kpca;
  if (name == "none") return ExtractorKind::none;
  throw InvalidConfig("unknown extractor '" + name + "'");
}

ClassifierKind classifier_from_name(const std::string& name) {
  if (name == "svm-ovr") return ClassifierKind::svm_ovr;
  if (name == "svm-pairwise") return ClassifierKind::svm_pairwise;
  if (name == "nn") return ClassifierKind::nn;
  throw InvalidConfig("unknown classifier '" + name + "'");
}

void mean_and_stddev(const std::vector<double>& values, double* mean,
                     double* stddev) {
  if (values.empty()) {
    *mean = 0.0;
    *stddev = 0.0;
    return;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mu = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  *mean = mu;
  *stddev = std::sqrt(ss / static_cast<double>(values.size()));
}

std::string method_string(const ExperimentConfig& cfg) {
  return std::string(extractor_name(cfg.extractor)) + "+" +
         classifier_name(cfg.classifier);
}

bool classifier_uses_svm(const ExperimentConfig& cfg) {
  return cfg.classifier == ClassifierKind::svm_ovr ||
         cfg.classifier == ClassifierKind::svm_pairwise;
}

void validate_experiment(const ExperimentConfig& cfg) {
  if (cfg.repeats < 1) throw InvalidConfig("repeats must be at least 1");
  if (cfg.k_train.empty()) throw InvalidConfig("k_train list is empty");
  for (std::size_t k : cfg.k_train) {
    if (k < 1) throw InvalidConfig("k_train values must be at least 1");
  }
}

/// Runs one (k_train, method) cell: `repeats` splits, each fit+evaluate.
/// With capture_failures the errors are recorded in the cell; otherwise
/// the first failure propagates.
MethodResult run_cell(const Dataset& ds, const ExperimentConfig& cfg,
                      std::size_t k, bool capture_failures) {
  MethodResult cell;
  cell.k_train = k;
  cell.method = method_string(cfg);
  for (std::size_t r = 0; r < cfg.repeats; ++r) {
    try {
      const auto [train, test] =
          split_per_class(ds, SplitSpec{k, cfg.seed, r});
      if (train.size() + test.size() != ds.size()) {
        throw InvalidInput("split lost samples");  // never expected
      }
      const TrainedPipeline pipe = train_pipeline(train, cfg);
      cell.per_repeat.push_back(recognition_rate(pipe, test));
    } catch (const Error& e) {
      if (!capture_failures) throw;
      cell.failures.push_back("repeat " + std::to_string(r) + ": " + e.what());
    }
  }
  mean_and_stddev(cell.per_repeat, &cell.mean_rate, &cell.stddev);
  return cell;
}

}  // namespace

ExperimentConfig resolve_svm_hyperparameters(const Dataset& ds,
                                             const ExperimentConfig& cfg,
                                             std::vector<std::string>* notes) {
  if (!classifier_uses_svm(cfg)) return cfg;
  const bool tune_sigma =
      cfg.svm_kernel.family == KernelFamily::rbf && cfg.svm_kernel.sigma2 <= 0.0;
  const bool tune_cost = cfg.c_cost <= 0.0;
  if (!tune_sigma && !tune_cost) return cfg;

  std::vector<double> sigmas, costs;
  if (tune_sigma) {
    sigmas.assign(std::begin(kSigmaGrid), std::end(kSigmaGrid));
  } else {
    sigmas.push_back(cfg.svm_kernel.sigma2);
  }
  if (tune_cost) {
    costs.assign(std::begin(kCostGrid), std::end(kCostGrid));
  } else {
    costs.push_back(cfg.c_cost);
  }

  const auto [train, test] =
      split_per_class(ds, SplitSpec{cfg.k_train.front(), cfg.seed, 0});
  ExperimentConfig best = cfg;
  double best_rate = -1.0;
  for (double sigma2 : sigmas) {
    for (double cost : costs) {
      ExperimentConfig candidate = cfg;
      candidate.svm_kernel.sigma2 = sigma2;
      candidate.c_cost = cost;
      double rate;
      try {
        rate = recognition_rate(train_pipeline(train, candidate), test);
      } catch (const Error&) {
        continue;  // unusable corner of the grid
      }
      if (rate > best_rate) {
        best_rate = rate;
        best = candidate;
      }
    }
  }
  if (best_rate < 0.0) {
    throw InvalidConfig("auto-tune failed on every grid candidate");
  }
  if (tune_sigma) {
    notes->push_back("svm.sigma2 = " + format_real(best.svm_kernel.sigma2) +
                     " (auto-tuned)");
  }
  if (tune_cost) {
    notes->push_back("svm.c = " + format_real(best.c_cost) + " (auto-tuned)");
  }
  return best;
}

const char* extractor_name(ExtractorKind kind) {
  switch (kind) {
    case ExtractorKind::kdda: return "kdda";
    case ExtractorKind::kpca: return "kpca";
    case ExtractorKind::none: return "none";
  }
  return "unknown";
}

const char* classifier_name(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::svm_ovr: return "svm-ovr";
    case ClassifierKind::svm_pairwise: return "svm-pairwise";
    case ClassifierKind::nn: return "nn";
  }
  return "unknown";
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  bool dataset_is_image = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidConfig("line " + std::to_string(line_no) +
                          ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw InvalidConfig("line " + std::to_string(line_no) +
                          ": empty key or value");
    }

    if (key == "dataset") {
      if (value == "image") {
        dataset_is_image = true;
      } else if (value == "rings") {
        dataset_is_image = false;
        cfg.image_dir.clear();
      } else {
        throw InvalidConfig("dataset must be 'image' or 'rings', got '" +
                            value + "'");
      }
    } else if (key == "image.dir") {
      cfg.image_dir = value;
    } else if (key == "image.width") {
      cfg.image_width = static_cast<int>(parse_long(value, key));
    } else if (key == "image.height") {
      cfg.image_height = static_cast<int>(parse_long(value, key));
    } else if (key == "rings.classes") {
      cfg.rings_classes = static_cast<int>(parse_long(value, key));
    } else if (key == "rings.per_class") {
      cfg.rings_per_class = static_cast<int>(parse_long(value, key));
    } else if (key == "rings.noise") {
      cfg.rings_noise = parse_real(value, key);
    } else if (key == "extractor") {
      cfg.extractor = extractor_from_name(value);
    } else if (key == "classifier") {
      cfg.classifier = classifier_from_name(value);
    } else if (key == "extractor.kernel") {
      cfg.extractor_kernel.family = kernel_family_from_name(value);
    } else if (key == "extractor.sigma2") {
      cfg.extractor_kernel.sigma2 = parse_real(value, key);
    } else if (key == "extractor.degree") {
      cfg.extractor_kernel.degree = static_cast<int>(parse_long(value, key));
    } else if (key == "extractor.offset") {
      cfg.extractor_kernel.offset = parse_real(value, key);
    } else if (key == "svm.kernel") {
      cfg.svm_kernel.family = kernel_family_from_name(value);
    } else if (key == "svm.sigma2") {
      cfg.svm_kernel.sigma2 = parse_real(value, key);
    } else if (key == "svm.degree") {
      cfg.svm_kernel.degree = static_cast<int>(parse_long(value, key));
    } else if (key == "svm.offset") {
      cfg.svm_kernel.offset = parse_real(value, key);
    } else if (key == "svm.c") {
      cfg.c_cost = parse_real(value, key);
    } else if (key == "svm.kkt_tol") {
      cfg.kkt_tol = parse_real(value, key);
    } else if (key == "svm.max_passes") {
      cfg.max_passes = static_cast<std::size_t>(parse_u64(value, key));
    } else if (key == "features") {
      cfg.m_features = static_cast<std::size_t>(parse_u64(value, key));
    } else if (key == "k_train") {
      cfg.k_train.clear();
      for (const auto& item : split_list(value)) {
        cfg.k_train.push_back(static_cast<std::size_t>(parse_u64(item, key)));
      }
    } else if (key == "repeats") {
      cfg.repeats = static_cast<std::size_t>(parse_u64(value, key));
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, key);
    } else if (key == "sweep.sigma2") {
      cfg.sweep_sigma2_values.clear();
      for (const auto& item : split_list(value)) {
        cfg.sweep_sigma2_values.push_back(parse_real(item, key));
      }
    } else if (key == "sweep.m") {
      cfg.sweep_m_values.clear();
      for (const auto& item : split_list(value)) {
        cfg.sweep_m_values.push_back(
            static_cast<std::size_t>(parse_u64(item, key)));
      }
    } else if (key == "boundary.resolution") {
      cfg.boundary_resolution = static_cast<std::size_t>(parse_u64(value, key));
    } else if (key == "boundary.x_min") {
      cfg.boundary_x_min = parse_real(value, key);
    } else if (key == "boundary.x_max") {
      cfg.boundary_x_max = parse_real(value, key);
    } else if (key == "boundary.y_min") {
      cfg.boundary_y_min = parse_real(value, key);
    } else if (key == "boundary.y_max") {
      cfg.boundary_y_max = parse_real(value, key);
    } else {
      throw InvalidConfig("unknown config key '" + key + "'");
    }
  }
  if (dataset_is_image && cfg.image_dir.empty()) {
    throw InvalidConfig("dataset = image requires image.dir");
  }
  if (!dataset_is_image) cfg.image_dir.clear();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

bool Report::complete() const {
  for (const auto& cell : cells) {
    if (!cell.failures.empty()) return false;
  }
  return true;
}

std::vector<double> TrainedPipeline::extract(std::span<const double> x) const {
  switch (extractor) {
    case ExtractorKind::kdda: return kdda_transform(*kdda, x);
    case ExtractorKind::kpca: return kpca_transform(*kpca, x);
    case ExtractorKind::none: return std::vector<double>(x.begin(), x.end());
  }
  throw InvalidInput("unknown extractor kind");
}

int TrainedPipeline::predict_features(std::span<const double> f) const {
  switch (classifier) {
    case ClassifierKind::svm_ovr: return ovr_predict(*ovr, f);
    case ClassifierKind::svm_pairwise: return pairwise_predict(*pairwise, f);
    case ClassifierKind::nn: return nn_predict(*nn, f);
  }
  throw InvalidInput("unknown classifier kind");
}

int TrainedPipeline::predict(std::span<const double> x) const {
  const std::vector<double> f = extract(x);
  return predict_features(f);
}

Dataset load_configured_dataset(const ExperimentConfig& cfg) {
  if (!cfg.image_dir.empty()) {
    return load_image_dir(cfg.image_dir, cfg.image_width, cfg.image_height);
  }
  return make_rings(cfg.rings_classes, cfg.rings_per_class, cfg.rings_noise,
                    cfg.seed);
}

TrainedPipeline train_pipeline(const Dataset& train,
                               const ExperimentConfig& cfg) {
  if (classifier_uses_svm(cfg)) {
    if (cfg.svm_kernel.family == KernelFamily::rbf &&
        cfg.svm_kernel.sigma2 <= 0.0) {
      throw InvalidConfig(
          "svm.sigma2 is unset; give a value or run through run_experiment "
          "for auto-tuning");
    }
    if (cfg.c_cost <= 0.0) {
      throw InvalidConfig(
          "svm.c is unset; give a value or run through run_experiment for "
          "auto-tuning");
    }
  }

  const ClassIndex labels = ClassIndex::from_labels(train.labels);
  TrainedPipeline pipe;
  pipe.extractor = cfg.extractor;
  pipe.classifier = cfg.classifier;

  const std::size_t default_m =
      static_cast<std::size_t>(labels.num_classes()) - 1;
  switch (cfg.extractor) {
    case ExtractorKind::kdda: {
      pipe.kdda =
          kdda_fit(train.samples, labels, cfg.extractor_kernel, cfg.m_features);
      pipe.feature_dim = pipe.kdda->m_features;
      const Matrix proj = training_projections(*pipe.kdda);
      pipe.train_features.reserve(proj.rows());
      for (std::size_t i = 0; i < proj.rows(); ++i) {
        std::vector<double> row(proj.cols());
        for (std::size_t j = 0; j < proj.cols(); ++j) row[j] = proj(i, j);
        pipe.train_features.push_back(std::move(row));
      }
      break;
    }
    case ExtractorKind::kpca: {
      pipe.kpca =
          kpca_fit(train.samples, cfg.extractor_kernel,
                   cfg.m_features == 0 ? default_m : cfg.m_features);
      pipe.feature_dim = pipe.kpca->m_features;
      pipe.train_features.reserve(train.size());
      for (const auto& sample : train.samples) {
        pipe.train_features.push_back(kpca_transform(*pipe.kpca, sample));
      }
      break;
    }
    case ExtractorKind::none: {
      pipe.feature_dim = train.samples.front().size();
      pipe.train_features = train.samples;
      break;
    }
  }

  switch (cfg.classifier) {
    case ClassifierKind::svm_ovr:
    case ClassifierKind::svm_pairwise: {
      SvmTrainConfig svm_cfg;
      svm_cfg.c_cost = cfg.c_cost;
      svm_cfg.kernel = cfg.svm_kernel;
      svm_cfg.kkt_tol = cfg.kkt_tol;
      svm_cfg.max_passes = cfg.max_passes;
      if (cfg.classifier == ClassifierKind::svm_ovr) {
        pipe.ovr = ovr_train(pipe.train_features, labels, svm_cfg);
      } else {
        pipe.pairwise = pairwise_train(pipe.train_features, labels, svm_cfg);
      }
      break;
    }
    case ClassifierKind::nn: {
      pipe.nn = nn_train(pipe.train_features, train.labels);
      break;
    }
  }
  return pipe;
}

double recognition_rate(const TrainedPipeline& pipe, const Dataset& test) {
  if (test.size() == 0) throw InvalidInput("empty test set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (pipe.predict(test.samples[i]) == test.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

Report run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  validate_experiment(cfg);
  const Dataset ds = load_configured_dataset(cfg);

  Report report;
  const ExperimentConfig resolved =
      resolve_svm_hyperparameters(ds, cfg, &report.notes);
  for (std::size_t k : resolved.k_train) {
    report.cells.push_back(run_cell(ds, resolved, k, /*capture_failures=*/true));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

Report run_table1(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  validate_experiment(cfg);
  const Dataset ds = load_configured_dataset(cfg);

  ExperimentConfig svm_cfg = cfg;
  svm_cfg.extractor = ExtractorKind::kdda;
  svm_cfg.classifier = ClassifierKind::svm_ovr;
  ExperimentConfig kdda_nn = cfg;
  kdda_nn.extractor = ExtractorKind::kdda;
  kdda_nn.classifier = ClassifierKind::nn;
  ExperimentConfig kpca_nn = cfg;
  kpca_nn.extractor = ExtractorKind::kpca;
  kpca_nn.classifier = ClassifierKind::nn;

  Report report;
  const ExperimentConfig svm_resolved =
      resolve_svm_hyperparameters(ds, svm_cfg, &report.notes);
  for (std::size_t k : cfg.k_train) {
    report.cells.push_back(run_cell(ds, svm_resolved, k, true));
    report.cells.push_back(run_cell(ds, kdda_nn, k, true));
    report.cells.push_back(run_cell(ds, kpca_nn, k, true));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

SweepCurve sweep_sigma(const ExperimentConfig& cfg,
                       const std::vector<double>& sigma2_values) {
  validate_experiment(cfg);
  if (sigma2_values.empty()) {
    throw InvalidConfig("sweep.sigma2 list is empty");
  }
  const Dataset ds = load_configured_dataset(cfg);

  // The sweep provides sigma2 itself; only the cost may need resolving,
  // which is done once (at the first swept width) and then held fixed so
  // rows differ in nothing but sigma2.
  SweepCurve curve;
  ExperimentConfig base = cfg;
  base.svm_kernel.sigma2 = sigma2_values.front();
  base = resolve_svm_hyperparameters(ds, base, &curve.notes);

  for (double sigma2 : sigma2_values) {
    ExperimentConfig point = base;
    point.svm_kernel.sigma2 = sigma2;
    const MethodResult cell =
        run_cell(ds, point, point.k_train.front(), /*capture_failures=*/false);
    curve.param.push_back(sigma2);
    curve.mean_error.push_back(1.0 - cell.mean_rate);
  }
  return curve;
}

SweepCurve sweep_m(const ExperimentConfig& cfg,
                   const std::vector<std::size_t>& m_values) {
  validate_experiment(cfg);
  if (m_values.empty()) throw InvalidConfig("sweep.m list is empty");
  const Dataset ds = load_configured_dataset(cfg);
  const ClassIndex labels = ClassIndex::from_labels(ds.labels);
  const std::size_t max_m = static_cast<std::size_t>(labels.num_classes()) - 1;
  for (std::size_t m : m_values) {
    if (m < 1 || m > max_m) {
      throw InvalidConfig("swept M " + std::to_string(m) +
                          " outside the valid range 1.." +
                          std::to_string(max_m));
    }
  }

  SweepCurve curve;
  const ExperimentConfig base =
      resolve_svm_hyperparameters(ds, cfg, &curve.notes);
  for (std::size_t m : m_values) {
    ExperimentConfig point = base;
    point.m_features = m;
    const MethodResult cell =
        run_cell(ds, point, point.k_train.front(), /*capture_failures=*/false);
    curve.param.push_back(static_cast<double>(m));
    curve.mean_error.push_back(1.0 - cell.mean_rate);
  }
  return curve;
}

GridBounds feature_bounds(const TrainedPipeline& pipe) {
  if (pipe.feature_dim != 2) {
    throw InvalidConfig("boundary grids need a 2-D feature space, have " +
                        std::to_string(pipe.feature_dim) + "-D");
  }
  if (pipe.train_features.empty()) {
    throw InvalidInput("pipeline holds no training features");
  }
  GridBounds b;
  b.x_min = b.x_max = pipe.train_features.front()[0];
  b.y_min = b.y_max = pipe.train_features.front()[1];
  for (const auto& f : pipe.train_features) {
    b.x_min = std::min(b.x_min, f[0]);
    b.x_max = std::max(b.x_max, f[0]);
    b.y_min = std::min(b.y_min, f[1]);
    b.y_max = std::max(b.y_max, f[1]);
  }
  const double x_margin = std::max(0.1 * (b.x_max - b.x_min), 1e-3);
  const double y_margin = std::max(0.1 * (b.y_max - b.y_min), 1e-3);
  b.x_min -= x_margin;
  b.x_max += x_margin;
  b.y_min -= y_margin;
  b.y_max += y_margin;
  return b;
}

void emit_boundary_grid(const TrainedPipeline& pipe, const GridBounds& bounds,
                        std::size_t resolution, std::ostream& out) {
  if (pipe.feature_dim != 2) {
    throw InvalidConfig("boundary grids need a 2-D feature space, have " +
                        std::to_string(pipe.feature_dim) + "-D");
  }
  if (resolution < 2) {
    throw InvalidConfig("boundary resolution must be at least 2");
  }
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min)) {
    throw InvalidConfig("boundary bounds must span a nonempty rectangle");
  }
  const double dx =
      (bounds.x_max - bounds.x_min) / static_cast<double>(resolution - 1);
  const double dy =
      (bounds.y_max - bounds.y_min) / static_cast<double>(resolution - 1);
  out << "x,y,predicted_class\n";
  for (std::size_t ix = 0; ix < resolution; ++ix) {
    const double x = bounds.x_min + static_cast<double>(ix) * dx;
    for (std::size_t iy = 0; iy < resolution; ++iy) {
      const double y = bounds.y_min + static_cast<double>(iy) * dy;
      const double point[2] = {x, y};
      out << format_real(x) << ',' << format_real(y) << ','
          << pipe.predict_features(point) << '\n';
    }
  }
}

void write_report_csv(const Report& report, std::ostream& out) {
  for (const auto& note : report.notes) out << "# " << note << '\n';
  out << "k_train,method,mean_rate,stddev,repeats\n";
  for (const auto& cell : report.cells) {
    out << cell.k_train << ',' << cell.method << ','
        << format_real(cell.mean_rate) << ',' << format_real(cell.stddev)
        << ',' << cell.per_repeat.size() << '\n';
  }
  for (const auto& cell : report.cells) {
    for (const auto& failure : cell.failures) {
      out << "# failed: k=" << cell.k_train << " method=" << cell.method
          << " " << failure << '\n';
    }
  }
}

void write_curve_csv(const SweepCurve& curve, const std::string& param_name,
                     std::ostream& out) {
  for (const auto& note : curve.notes) out << "# " << note << '\n';
  out << param_name << ",mean_error_rate\n";
  for (std::size_t i = 0; i < curve.param.size(); ++i) {
    out << format_real(curve.param[i]) << ','
        << format_real(curve.mean_error[i]) << '\n';
  }
}

std::string format_real(double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, result.ptr);
}

}  // namespace kdda
