//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/evolve.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "protfold/error.h"
#include "protfold/kernel.h"
#include "protfold/util.h"

namespace protfold {

void GaConfig::validate() const {
  if (population_size < 2) {
    throw ConfigError(fmt::format("population_size must be >= 2, got {}", population_size));
  }
  if (elite_count < 1 || elite_count >= population_size) {
    throw ConfigError(fmt::format("elite_count must lie in [1, population_size), got {}",
                                  elite_count));
  }
  for (auto [name, rate] : {std::pair {"crossover_rate", crossover_rate},
                            std::pair {"mutation_rate", mutation_rate}}) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw ConfigError(fmt::format("{} must lie in [0, 1], got {}", name, rate));
    }
  }
  if (!(mutation_scale >= 0.0) || !std::isfinite(mutation_scale)) {
    throw ConfigError(fmt::format("mutation_scale must be >= 0, got {}", mutation_scale));
  }
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (stagnation_window < 1) throw ConfigError("stagnation_window must be >= 1");
  if (tournament_size < 1) throw ConfigError("tournament_size must be >= 1");
}

CostMatrix decode(std::span<const double> genes, bool symmetric) {
  if (genes.size() != kCostGenomeLength) {
    throw DataError(fmt::format("cost genome needs {} genes, got {}", kCostGenomeLength,
                                genes.size()));
  }
  Matrix20d s;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) s(i, j) = std::clamp(genes[i * 20 + j], 0.0, 1.0);
  }
  s.diagonal().setZero();
  if (symmetric) s = ((s + s.transpose()) * 0.5).eval();
  return CostMatrix(s);
}

std::string ControlSet::fingerprint() const {
  std::ostringstream out;
  auto put = [&](const std::vector<std::string> &seqs, const std::vector<int> &labels) {
    for (std::size_t i = 0; i < seqs.size(); ++i) out << seqs[i] << ':' << labels[i] << ';';
    out << '|';
  };
  put(train, train_labels);
  put(validation, validation_labels);
  out << format_real(indel_cost) << '|' << balanced << '|' << format_real(svm.c) << '|'
      << format_real(svm.tol) << '|' << svm.max_iter << '|' << format_real(svm.positive_weight)
      << '|' << format_real(svm.negative_weight);
  return sha256_hex(out.str());
}

ControlSet make_control_set(std::span<const LabeledSequence> train, double train_fraction,
                            std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError(fmt::format("control train fraction must lie in (0, 1), got {}",
                                  train_fraction));
  }
  std::vector<LabeledId> items;
  for (const auto &s : train) items.emplace_back(s.protein_id, s.label);
  DatasetSplit split = split_by_fraction(items, train_fraction, seed);

  std::unordered_map<std::string, const LabeledSequence *> by_id;
  for (const auto &s : train) by_id[s.protein_id] = &s;
  ControlSet control;
  for (const auto &id : split.train_ids) {
    control.train.push_back(by_id.at(id)->residues);
    control.train_labels.push_back(class_sign(by_id.at(id)->label));
  }
  for (const auto &id : split.test_ids) {
    control.validation.push_back(by_id.at(id)->residues);
    control.validation_labels.push_back(class_sign(by_id.at(id)->label));
  }
  if (control.train.empty() || control.validation.empty()) {
    throw DataError("degenerate control split: an inner part is empty");
  }
  return control;
}

double fitness(std::span<const double> genes, const ControlSet &control, bool symmetric,
               int threads) {
  if (control.train.empty() || control.validation.empty() ||
      control.train.size() != control.train_labels.size() ||
      control.validation.size() != control.validation_labels.size()) {
    throw DataError("degenerate control split");
  }
  const auto first = control.train_labels.front();
  const bool one_class = std::all_of(control.train_labels.begin(), control.train_labels.end(),
                                     [&](int y) { return y == first; });
  std::vector<int> predicted;
  if (one_class) {
    // A single training class admits only the constant classifier.
    predicted.assign(control.validation.size(), first);
  } else {
    const CostScheme scheme = CostScheme::matrix(decode(genes, symmetric), control.indel_cost);
    const Eigen::MatrixXd d = pairwise_distances(control.train, scheme, threads);
    const CenteredKernel centered = center_to_kernel(d, scheme.fingerprint());
    const Eigen::MatrixXd rows =
        kernel_rows(cross_distances(control.validation, control.train, scheme, threads),
                    centered.stats);
    const SvmModel model = train(centered.kernel.values, control.train_labels, control.svm);
    predicted.reserve(rows.rows());
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      Eigen::VectorXd row = rows.row(i).transpose();
      predicted.push_back(predict(model, {row.data(), static_cast<std::size_t>(row.size())}).label);
    }
  }
  const ErrorReport report = error_report(predicted, control.validation_labels);
  return control.balanced ? report.balanced_accuracy() : report.accuracy();
}

FitnessEvaluator::FitnessEvaluator(ControlSet control, bool symmetric, int threads)
    : control_(std::move(control)),
      fingerprint_(control_.fingerprint()),
      symmetric_(symmetric),
      threads_(threads) {}

double FitnessEvaluator::operator()(std::span<const double> genes) {
  std::string key(reinterpret_cast<const char *>(genes.data()), genes.size_bytes());
  key += fingerprint_;
  key += symmetric_ ? 's' : 'a';
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      ++hits_;
      return it->second;
    }
  }
  const double value = fitness(genes, control_, symmetric_, threads_);
  std::lock_guard lock(mutex_);
  ++evaluations_;
  cache_.emplace(std::move(key), value);
  return value;
}

std::size_t FitnessEvaluator::evaluations() const {
  std::lock_guard lock(mutex_);
  return evaluations_;
}

std::size_t FitnessEvaluator::cache_hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

namespace {

struct GaState {
  std::vector<Genome> population;
  Genome best;
  std::vector<double> trace;
  std::size_t stagnant = 0;
  std::mt19937_64 rng;
};

void evaluate_population(std::vector<Genome> &population, const FitnessFn &fitness_fn,
                         int threads) {
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (!population[i].fitness) pending.push_back(i);
  }
  std::vector<double> values(pending.size());
  parallel_for(pending.size(), threads, [&](std::size_t k) {
    const double f = fitness_fn(population[pending[k]].genes);
    if (!std::isfinite(f)) throw NumericError(fmt::format("fitness evaluated to {}", f));
    values[k] = f;
  });
  for (std::size_t k = 0; k < pending.size(); ++k) population[pending[k]].fitness = values[k];
}

// Index of the fittest genome; the earliest wins ties.
std::size_t fittest(const std::vector<Genome> &population) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    if (*population[i].fitness > *population[best].fitness) best = i;
  }
  return best;
}

nlohmann::json checkpoint_json(const GaConfig &config, const GaState &state,
                               std::size_t genome_length) {
  nlohmann::json pop = nlohmann::json::array();
  for (const auto &g : state.population) {
    pop.push_back({{"genes", g.genes}, {"fitness", *g.fitness}});
  }
  std::ostringstream rng;
  rng << state.rng;
  return {
      {"generation", state.trace.size() - 1},
      {"genome_length", genome_length},
      {"seed", config.seed},
      {"population", std::move(pop)},
      {"best", {{"genes", state.best.genes}, {"fitness", *state.best.fitness}}},
      {"trace", state.trace},
      {"stagnant", state.stagnant},
      {"rng_state", rng.str()},
  };
}

GaState state_from_checkpoint(const nlohmann::json &j, const GaConfig &config,
                              std::size_t genome_length) {
  try {
    if (j.at("genome_length").get<std::size_t>() != genome_length ||
        j.at("seed").get<std::uint64_t>() != config.seed) {
      throw ConfigError("checkpoint was written by a different GA configuration");
    }
    GaState state;
    for (const auto &g : j.at("population")) {
      state.population.push_back({g.at("genes").get<std::vector<double>>(),
                                  g.at("fitness").get<double>()});
    }
    if (state.population.size() != config.population_size) {
      throw ConfigError("checkpoint population size differs from the configuration");
    }
    state.best = {j.at("best").at("genes").get<std::vector<double>>(),
                  j.at("best").at("fitness").get<double>()};
    state.trace = j.at("trace").get<std::vector<double>>();
    state.stagnant = j.at("stagnant").get<std::size_t>();
    std::istringstream rng(j.at("rng_state").get<std::string>());
    rng >> state.rng;
    if (!rng || state.trace.empty()) throw DataError("corrupt GA checkpoint");
    return state;
  } catch (const nlohmann::json::exception &e) {
    throw DataError(fmt::format("malformed GA checkpoint: {}", e.what()));
  }
}

}  // namespace

GaResult run_ga(const GaConfig &config, const FitnessFn &fitness_fn, std::size_t genome_length,
                const nlohmann::json *resume, const GenerationObserver &observer) {
  config.validate();
  if (genome_length == 0) throw ConfigError("genome_length must be positive");

  GaState state;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (resume != nullptr) {
    state = state_from_checkpoint(*resume, config, genome_length);
  } else {
    state.rng.seed(config.seed);
    state.population.resize(config.population_size);
    for (auto &g : state.population) {
      g.genes.resize(genome_length);
      for (auto &x : g.genes) x = unit(state.rng);
    }
    evaluate_population(state.population, fitness_fn, config.threads);
    state.best = state.population[fittest(state.population)];
    state.trace.push_back(*state.best.fitness);
    if (observer) observer(0, state.population);
    if (!config.checkpoint_path.empty()) {
      write_file(config.checkpoint_path, checkpoint_json(config, state, genome_length).dump());
    }
  }

  std::normal_distribution<double> noise(0.0, config.mutation_scale);
  const std::size_t pop_size = config.population_size;
  std::uniform_int_distribution<std::size_t> pick(0, pop_size - 1);
  auto tournament = [&]() -> const Genome & {
    std::size_t winner = pick(state.rng);
    for (std::size_t t = 1; t < config.tournament_size; ++t) {
      std::size_t rival = pick(state.rng);
      if (*state.population[rival].fitness > *state.population[winner].fitness) winner = rival;
    }
    return state.population[winner];
  };

  while (state.trace.size() < config.max_iterations &&
         state.stagnant < config.stagnation_window) {
    std::vector<std::size_t> rank(pop_size);
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
      return *state.population[a].fitness > *state.population[b].fitness;
    });

    std::vector<Genome> next;
    next.reserve(pop_size);
    for (std::size_t e = 0; e < config.elite_count; ++e) next.push_back(state.population[rank[e]]);
    while (next.size() < pop_size) {
      const Genome &a = tournament();
      const Genome &b = tournament();
      Genome child {a.genes, std::nullopt};
      if (unit(state.rng) < config.crossover_rate) {
        for (std::size_t i = 0; i < genome_length; ++i) {
          if (unit(state.rng) < 0.5) child.genes[i] = b.genes[i];
        }
      }
      for (auto &x : child.genes) {
        if (unit(state.rng) < config.mutation_rate) {
          x = std::clamp(x + noise(state.rng), 0.0, 1.0);
        }
      }
      next.push_back(std::move(child));
    }
    evaluate_population(next, fitness_fn, config.threads);
    state.population = std::move(next);

    const Genome &leader = state.population[fittest(state.population)];
    if (*leader.fitness > *state.best.fitness) state.best = leader;
    const double previous = state.trace.back();
    state.trace.push_back(*state.best.fitness);
    state.stagnant = std::abs(state.trace.back() - previous) <= 1e-12 ? state.stagnant + 1 : 0;

    if (observer) observer(state.trace.size() - 1, state.population);
    if (!config.checkpoint_path.empty()) {
      write_file(config.checkpoint_path, checkpoint_json(config, state, genome_length).dump());
    }
  }

  GaResult result;
  result.best = state.best;
  result.trace = state.trace;
  result.generations = state.trace.size();
  result.stagnated = state.stagnant >= config.stagnation_window;
  return result;
}

EvolvedCosts evolve_cost_matrix(const GaConfig &config, const ControlSet &control,
                                const nlohmann::json *resume) {
  // Each fitness call is already parallel inside the distance computation,
  // so genomes are scored one at a time.
  FitnessEvaluator evaluator(control, config.symmetric, config.threads);
  GaConfig sequential = config;
  sequential.threads = 1;
  GaResult search = run_ga(
      sequential, [&](std::span<const double> genes) { return evaluator(genes); },
      kCostGenomeLength, resume);
  return {decode(search.best.genes, config.symmetric), std::move(search)};
}

}  // namespace protfold
