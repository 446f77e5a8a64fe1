//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_EXPERIMENT_H_
#define PROTFOLD_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "protfold/config.h"
#include "protfold/datamodel.h"
#include "protfold/svm.h"

namespace protfold {

using LengthSample = std::pair<std::size_t, SolubilityClass>;

struct BaselineResult {
  std::size_t threshold = 0;  // length < threshold is predicted soluble
  std::size_t train_errors = 0;
  ErrorReport train;
  ErrorReport test;
};

BaselineResult baseline_length_classifier(std::span<const LengthSample> train,
                                          std::span<const LengthSample> test);

// Fixed-length summary of a contact graph: vertex count, edge density, mean
// and standard deviation of the degree, mean vertex attributes (3) and mean
// edge length.
Eigen::VectorXd graph_descriptor(const LabeledGraph &g);

struct ReportRow {
  std::string dataset;
  std::string representation;
  std::string substitution;
  ErrorReport errors;
};

void write_report_header(std::ostream &out);
void write_report_row(std::ostream &out, const ReportRow &row, std::string_view manifest_hash);

struct ExperimentOptions {
  // Permute the training labels with this seed before fitting.
  std::optional<std::uint64_t> shuffle_labels_seed;
};

struct ExperimentOutcome {
  ReportRow row;
  SvmModel model;
  DatasetSplit split;
  nlohmann::json manifest;
  std::string manifest_hash;
  std::vector<std::string> warnings;
  std::filesystem::path out_dir;
};

// Runs one pipeline end to end and writes report.csv, predictions.csv,
// model.json, split.json and manifest.json under config.out. Errors carry the
// failing stage name.
ExperimentOutcome run_experiment(const ExperimentConfig &config,
                                 const ExperimentOptions &options = {});

struct ReplayOutcome {
  ExperimentOutcome outcome;
  bool identical = false;                   // every recorded output hash matched
  std::vector<std::string> mismatched;      // output names whose bytes differ
};

// Re-runs the experiment recorded in `manifest_path` into `out_dir` after
// verifying the input hashes.
ReplayOutcome replay_experiment(const std::filesystem::path &manifest_path,
                                const std::filesystem::path &out_dir);

struct ShuffleControl {
  ExperimentOutcome original;
  ExperimentOutcome shuffled;
};

// Runs the pipeline twice, with true and with permuted training labels, and
// writes shuffle_control.csv under config.out.
ShuffleControl label_shuffle_control(const ExperimentConfig &config, std::uint64_t seed);

// Length baseline on the configured sequence dataset and split; writes
// baseline.csv under config.out.
BaselineResult run_baseline(const ExperimentConfig &config);

// Loads and assembles every dataset referenced by the config.
Datasets load_datasets(const ExperimentConfig &config, nlohmann::json *input_hashes = nullptr);

}  // namespace protfold

#endif  // PROTFOLD_EXPERIMENT_H_
