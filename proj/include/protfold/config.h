//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_CONFIG_H_
#define PROTFOLD_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "protfold/datamodel.h"
#include "protfold/evolve.h"
#include "protfold/graph.h"

namespace protfold {

enum class Representation {
  Seq,                 // residue symbols, unit substitution costs
  SeqPam,              // residue symbols, costs derived from PAM120
  SeqLearned,          // residue symbols, costs learned by the GA (or loaded)
  GraphDirect,         // contact graphs, descriptor-distance kernel
  Seriated,            // seriated vector sequences, Euclidean substitution costs
  ComplexityFeatures,  // (entropy, ambiguity) features, Gaussian kernel
};

std::string_view to_string(Representation r) noexcept;
Representation parse_representation(std::string_view text);
bool needs_structures(Representation r) noexcept;

// Which labeled proteins a sequence representation draws from.
enum class SequenceSubset { All, WithStructure };

struct DataPaths {
  std::filesystem::path solubility;        // CSV protein_id,solubility
  std::filesystem::path sequences;         // FASTA
  std::filesystem::path structures;        // directory of <protein_id>.pdb
  std::filesystem::path component_scores;  // CSV residue,c1,c2,c3
  std::filesystem::path descriptors;       // CSV of residue descriptors, reduced to 3 components
  std::filesystem::path cost_matrix;       // fixed learned costs for SeqLearned
  std::filesystem::path test_ids;          // one protein id per line
};

struct SplitSpec {
  std::optional<ClassCounts> test_counts;
  double train_fraction = 0.7;  // used when neither test_counts nor test_ids is set
};

struct ExperimentConfig {
  std::string dataset;  // label for the report; derived when empty
  Representation representation = Representation::Seq;
  DataPaths data;
  SplitSpec split;
  SequenceSubset subset = SequenceSubset::All;
  NonstandardPolicy nonstandard = NonstandardPolicy::Drop;

  std::uint64_t seed = 0;
  std::filesystem::path out = "protfold-out";
  int threads = 1;

  double svm_c = 2.0;
  double svm_positive_weight = 1.0;
  double svm_negative_weight = 1.0;

  double r_min = 4.0;
  double r_max = 8.0;
  EdgeWeighting seriation_weighting = EdgeWeighting::Distance;

  double indel_cost = 1.0;
  double vector_scale = 1.0;

  GaConfig ga;
  double control_fraction = 0.7;
  bool balanced_fitness = false;

  std::size_t ambiguity_budget = 2000;
  double gaussian_sigma = 0.0;  // 0 selects the median training distance

  // Throws ConfigError for missing files or unmet representation needs.
  void validate() const;

  // Canonical form with absolute paths; from_json(to_json()) round-trips.
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json &j,
                                    const std::filesystem::path &base_dir = {});
};

// Reads a .json or .toml file; relative paths resolve against its directory.
ExperimentConfig load_config(const std::filesystem::path &path);

// Parses the TOML subset used by configuration files: [tables], dotted table
// names, key = value with strings, numbers, booleans and one-line arrays.
nlohmann::json parse_toml(std::string_view text);

}  // namespace protfold

#endif  // PROTFOLD_CONFIG_H_
