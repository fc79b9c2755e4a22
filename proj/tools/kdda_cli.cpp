// Experiment runner: repeated random-split recognition-rate reports,
// kernel-width and feature-count sweeps, and decision-boundary grids,
// all emitted as CSV under --out.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kdda/errors.hpp"
#include "kdda/harness.hpp"

namespace fs = std::filesystem;

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> repeats;
};

kdda::ExperimentConfig load_config(const CliOptions& opts) {
  kdda::ExperimentConfig cfg = kdda::parse_config_file(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.repeats) cfg.repeats = *opts.repeats;
  return cfg;
}

std::ofstream open_output(const CliOptions& opts, const std::string& name) {
  fs::create_directories(opts.out_dir);
  const fs::path path = fs::path(opts.out_dir) / name;
  std::ofstream out(path, std::ios::binary);  // binary: same bytes everywhere
  if (!out) throw kdda::IoError("cannot write '" + path.string() + "'");
  std::cout << "writing " << path.string() << "\n";
  return out;
}

void print_report(const kdda::Report& report) {
  for (const auto& note : report.notes) std::cout << "note: " << note << "\n";
  for (const auto& cell : report.cells) {
    char line[160];
    std::snprintf(line, sizeof line,
                  "k=%zu  %-18s mean %6.2f%%  stddev %5.2f%%  repeats %zu",
                  cell.k_train, cell.method.c_str(), 100.0 * cell.mean_rate,
                  100.0 * cell.stddev, cell.per_repeat.size());
    std::cout << line << "\n";
    for (const auto& failure : cell.failures) {
      std::cout << "  failed " << failure << "\n";
    }
  }
  std::printf("wall time %.1fs\n", report.wall_seconds);
}

/// Table-1-shaped view: one row per k, one column per method.
void print_table(const kdda::Report& report,
                 const std::vector<std::size_t>& k_values) {
  std::vector<std::string> methods;
  for (const auto& cell : report.cells) {
    if (std::find(methods.begin(), methods.end(), cell.method) ==
        methods.end()) {
      methods.push_back(cell.method);
    }
  }
  std::printf("%-8s", "k");
  for (const auto& m : methods) std::printf("  %-14s", m.c_str());
  std::printf("\n");
  for (std::size_t k : k_values) {
    std::printf("%-8zu", k);
    for (const auto& m : methods) {
      for (const auto& cell : report.cells) {
        if (cell.k_train == k && cell.method == m) {
          if (cell.per_repeat.empty()) {
            std::printf("  %-14s", "failed");
          } else {
            std::printf("  %-14.1f", 100.0 * cell.mean_rate);
          }
        }
      }
    }
    std::printf("\n");
  }
}

int finish(const kdda::Report& report) {
  return report.complete() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel discriminant feature extraction + SVM experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --config & friends after the subcommand too

  CliOptions opts;
  app.add_option("--config", opts.config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", opts.out_dir, "output directory for CSV reports");
  app.add_option("--seed", opts.seed, "override the config's base seed");
  app.add_option("--repeats", opts.repeats, "override the config's repeats");

  auto* cmd_run = app.add_subcommand(
      "run", "run the configured method over the k_train list");
  auto* cmd_sweep_sigma = app.add_subcommand(
      "sweep-sigma", "error rate vs. SVM kernel width (sweep.sigma2 list)");
  auto* cmd_sweep_m = app.add_subcommand(
      "sweep-m", "error rate vs. retained feature count (sweep.m list)");
  auto* cmd_boundary = app.add_subcommand(
      "boundary", "decision predictions over a 2-D feature grid");
  auto* cmd_table1 = app.add_subcommand(
      "table1", "compare kdda+svm-ovr, kdda+nn, kpca+nn on shared splits");

  CLI11_PARSE(app, argc, argv);

  try {
    const kdda::ExperimentConfig cfg = load_config(opts);

    if (cmd_run->parsed()) {
      const kdda::Report report = kdda::run_experiment(cfg);
      auto out = open_output(opts, "report.csv");
      kdda::write_report_csv(report, out);
      print_report(report);
      return finish(report);
    }
    if (cmd_sweep_sigma->parsed()) {
      const kdda::SweepCurve curve =
          kdda::sweep_sigma(cfg, cfg.sweep_sigma2_values);
      auto out = open_output(opts, "sweep_sigma.csv");
      kdda::write_curve_csv(curve, "sigma2", out);
      return 0;
    }
    if (cmd_sweep_m->parsed()) {
      const kdda::SweepCurve curve = kdda::sweep_m(cfg, cfg.sweep_m_values);
      auto out = open_output(opts, "sweep_m.csv");
      kdda::write_curve_csv(curve, "m_features", out);
      return 0;
    }
    if (cmd_boundary->parsed()) {
      // Fit on the full dataset: the grid is a picture of the final model,
      // not a held-out evaluation.
      const kdda::Dataset ds = kdda::load_configured_dataset(cfg);
      std::vector<std::string> notes;
      const kdda::ExperimentConfig resolved =
          kdda::resolve_svm_hyperparameters(ds, cfg, &notes);
      for (const auto& note : notes) std::cout << "note: " << note << "\n";
      const kdda::TrainedPipeline pipe = kdda::train_pipeline(ds, resolved);
      kdda::GridBounds bounds = kdda::feature_bounds(pipe);
      if (cfg.boundary_x_min) bounds.x_min = *cfg.boundary_x_min;
      if (cfg.boundary_x_max) bounds.x_max = *cfg.boundary_x_max;
      if (cfg.boundary_y_min) bounds.y_min = *cfg.boundary_y_min;
      if (cfg.boundary_y_max) bounds.y_max = *cfg.boundary_y_max;
      auto out = open_output(opts, "boundary.csv");
      for (const auto& note : notes) out << "# " << note << "\n";
      kdda::emit_boundary_grid(pipe, bounds, cfg.boundary_resolution, out);
      return 0;
    }
    if (cmd_table1->parsed()) {
      const kdda::Report report = kdda::run_table1(cfg);
      auto out = open_output(opts, "table1.csv");
      kdda::write_report_csv(report, out);
      print_table(report, cfg.k_train);
      print_report(report);
      return finish(report);
    }
  } catch (const kdda::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;  // unreachable: a subcommand is required
}
