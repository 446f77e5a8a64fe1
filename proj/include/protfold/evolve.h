//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_EVOLVE_H_
#define PROTFOLD_EVOLVE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "protfold/datamodel.h"
#include "protfold/seqdist.h"
#include "protfold/svm.h"

namespace protfold {

inline constexpr std::size_t kCostGenomeLength = 400;

struct Genome {
  std::vector<double> genes;  // row-major 20 x 20 for cost matrices
  std::optional<double> fitness;
};

struct GaConfig {
  std::size_t population_size = 50;
  std::size_t elite_count = 1;
  double crossover_rate = 0.9;
  double mutation_rate = 0.05;
  double mutation_scale = 0.1;
  std::size_t max_iterations = 100;  // generations, the initial one included
  std::size_t stagnation_window = 10;
  std::size_t tournament_size = 3;
  std::uint64_t seed = 0;
  bool symmetric = false;  // average S with its transpose when decoding
  int threads = 1;
  std::string checkpoint_path;  // rewritten after every generation when set

  void validate() const;
};

CostMatrix decode(std::span<const double> genes, bool symmetric = false);

// Inner train/validation split that scores candidate cost matrices.
struct ControlSet {
  std::vector<std::string> train;
  std::vector<int> train_labels;  // +1 soluble, -1 insoluble
  std::vector<std::string> validation;
  std::vector<int> validation_labels;
  double indel_cost = 1.0;
  bool balanced = false;  // score with balanced accuracy instead of 1 - global error
  SvmConfig svm;

  std::string fingerprint() const;
};

// Stratified split of `train` keeping `train_fraction` of each class for
// control training.
ControlSet make_control_set(std::span<const LabeledSequence> train, double train_fraction,
                            std::uint64_t seed);

double fitness(std::span<const double> genes, const ControlSet &control, bool symmetric = false,
               int threads = 1);

// Memoizing wrapper around fitness(); safe to call from several threads.
class FitnessEvaluator {
 public:
  FitnessEvaluator(ControlSet control, bool symmetric = false, int threads = 1);

  double operator()(std::span<const double> genes);

  std::size_t evaluations() const;
  std::size_t cache_hits() const;

 private:
  ControlSet control_;
  std::string fingerprint_;
  bool symmetric_;
  int threads_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, double> cache_;
  std::size_t evaluations_ = 0;
  std::size_t hits_ = 0;
};

using FitnessFn = std::function<double(std::span<const double>)>;
using GenerationObserver = std::function<void(std::size_t generation, const std::vector<Genome> &)>;

struct GaResult {
  Genome best;
  std::vector<double> trace;  // best-so-far fitness per generation
  std::size_t generations = 0;
  bool stagnated = false;
};

// `resume` is a checkpoint previously written by the same configuration.
GaResult run_ga(const GaConfig &config, const FitnessFn &fitness_fn,
                std::size_t genome_length = kCostGenomeLength,
                const nlohmann::json *resume = nullptr,
                const GenerationObserver &observer = {});

struct EvolvedCosts {
  CostMatrix costs;
  GaResult search;
};

EvolvedCosts evolve_cost_matrix(const GaConfig &config, const ControlSet &control,
                                const nlohmann::json *resume = nullptr);

}  // namespace protfold

#endif  // PROTFOLD_EVOLVE_H_
