//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/experiment.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "protfold/complexity.h"
#include "protfold/error.h"
#include "protfold/evolve.h"
#include "protfold/kernel.h"
#include "protfold/seqdist.h"
#include "protfold/util.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace protfold {

namespace {

constexpr std::string_view kVersion = "0.1.0";

// Re-throws with the stage name prepended, keeping the error category.
template <typename F>
auto in_stage(std::string_view stage, F &&body) -> decltype(body()) {
  try {
    return body();
  } catch (const ConfigError &e) {
    throw ConfigError(fmt::format("stage '{}': {}", stage, e.what()));
  } catch (const DataError &e) {
    throw DataError(fmt::format("stage '{}': {}", stage, e.what()));
  } catch (const NumericError &e) {
    throw NumericError(fmt::format("stage '{}': {}", stage, e.what()));
  } catch (const std::exception &e) {
    throw Error(fmt::format("stage '{}': {}", stage, e.what()));
  }
}

int sign_of(SolubilityClass label) {
  if (label == SolubilityClass::Excluded) throw DataError("excluded sample in labeled data");
  return class_sign(label);
}

}  // namespace

BaselineResult baseline_length_classifier(std::span<const LengthSample> train,
                                          std::span<const LengthSample> test) {
  if (train.empty() || test.empty()) throw DataError("baseline needs non-empty train and test sets");
  std::vector<LengthSample> sorted(train.begin(), train.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t total_sol = 0;
  for (const auto &[len, label] : sorted) total_sol += sign_of(label) > 0;
  if (total_sol == 0 || total_sol == sorted.size()) {
    throw DataError("baseline needs both classes in the training data");
  }

  // Sweep candidate thresholds in increasing order; below counts the samples
  // with length < t.
  std::size_t best_t = 0, best_err = sorted.size() + 1;
  std::size_t ins_below = 0, sol_below = 0;
  std::size_t i = 0;
  auto consider = [&](std::size_t t) {
    const std::size_t err = ins_below + (total_sol - sol_below);
    if (err < best_err) {
      best_err = err;
      best_t = t;
    }
  };
  while (i < sorted.size()) {
    const std::size_t len = sorted[i].first;
    consider(len);
    while (i < sorted.size() && sorted[i].first == len) {
      (sorted[i].second == SolubilityClass::Soluble ? sol_below : ins_below) += 1;
      ++i;
    }
  }
  consider(sorted.back().first + 1);

  auto report = [&](std::span<const LengthSample> samples) {
    std::vector<int> predicted, truth;
    for (const auto &[len, label] : samples) {
      predicted.push_back(len < best_t ? 1 : -1);
      truth.push_back(sign_of(label));
    }
    return error_report(predicted, truth);
  };
  BaselineResult result;
  result.threshold = best_t;
  result.train_errors = best_err;
  result.train = report(train);
  result.test = report(test);
  return result;
}

Eigen::VectorXd graph_descriptor(const LabeledGraph &g) {
  const int n = g.vertex_count();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(8);
  if (n == 0) return f;
  const double m = static_cast<double>(g.edge_count());
  f(0) = n;
  f(1) = n > 1 ? 2.0 * m / (static_cast<double>(n) * (n - 1)) : 0.0;
  double mean = 2.0 * m / n, var = 0.0;
  for (int v = 0; v < n; ++v) var += (g.degree(v) - mean) * (g.degree(v) - mean);
  f(2) = mean;
  f(3) = std::sqrt(var / n);
  Vec3 attr = Vec3::Zero();
  for (const auto &a : g.vertex_attrs()) attr += a;
  f.segment<3>(4) = attr / n;
  double total = 0.0;
  for (const auto &e : g.edges()) total += e.length;
  f(7) = m > 0 ? total / m : 0.0;
  return f;
}

void write_report_header(std::ostream &out) {
  out << "dataset,representation,substitution,err_ins,n_ins,err_sol,n_sol,rate_ins,rate_sol,"
         "global_rate,manifest_hash\n";
}

void write_report_row(std::ostream &out, const ReportRow &row, std::string_view manifest_hash) {
  const auto &e = row.errors;
  out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", row.dataset, row.representation,
                     row.substitution, e.errors_negative, e.count_negative, e.errors_positive,
                     e.count_positive, format_real(e.rate_negative()),
                     format_real(e.rate_positive()), format_real(e.global_rate()), manifest_hash);
}

// ---------------------------------------------------------------------------
// Loading

namespace {

std::map<char, char> default_substitutions() {
  return {{'B', 'D'}, {'Z', 'E'}, {'U', 'C'}, {'O', 'K'}, {'J', 'L'}};
}

void record_input(json *hashes, const std::string &name, const fs::path &path) {
  if (hashes == nullptr || path.empty()) return;
  (*hashes)[name] = {{"path", fs::absolute(path).lexically_normal().string()},
                     {"sha256", file_sha256(path)}};
}

std::optional<fs::path> find_structure(const fs::path &dir, const std::string &id) {
  for (const char *ext : {".pdb", ".ent", ".PDB"}) {
    fs::path p = dir / (id + ext);
    if (fs::is_regular_file(p)) return p;
  }
  return std::nullopt;
}

Eigen::MatrixXd load_vertex_scores(const ExperimentConfig &config, json *hashes) {
  if (!config.data.component_scores.empty()) {
    record_input(hashes, "component_scores", config.data.component_scores);
    std::istringstream in(read_file(config.data.component_scores));
    Eigen::MatrixXd scores = read_scores_csv(in);
    if (scores.cols() < 3) throw DataError("component score table needs three components");
    return scores.leftCols(3);
  }
  record_input(hashes, "descriptors", config.data.descriptors);
  std::istringstream in(read_file(config.data.descriptors));
  return chemphys_components(read_descriptor_csv(in), 3).scores;
}

}  // namespace

Datasets load_datasets(const ExperimentConfig &config, json *input_hashes) {
  record_input(input_hashes, "solubility", config.data.solubility);
  std::istringstream sol_in(read_file(config.data.solubility));
  const auto raw = read_solubility_csv(sol_in);
  const auto records = normalize_solubility(raw);

  record_input(input_hashes, "sequences", config.data.sequences);
  FastaOptions fasta_options;
  fasta_options.policy = config.nonstandard;
  if (config.nonstandard == NonstandardPolicy::Map) fasta_options.substitutions = default_substitutions();
  std::istringstream fasta_in(read_file(config.data.sequences));
  FastaResult fasta = read_fasta(fasta_in, fasta_options);

  std::vector<CoordinateSet> coordinates;
  Eigen::MatrixXd scores;
  std::vector<std::string> warnings = fasta.warnings;
  const bool want_structures =
      needs_structures(config.representation) || config.subset == SequenceSubset::WithStructure;
  if (want_structures) {
    scores = load_vertex_scores(config, input_hashes);
    for (const auto &rec : records) {
      if (rec.label == SolubilityClass::Excluded) continue;
      auto path = find_structure(config.data.structures, rec.protein_id);
      if (!path) continue;
      record_input(input_hashes, "structure:" + rec.protein_id, *path);
      try {
        coordinates.push_back(parse_coordinates(read_file(*path), rec.protein_id));
      } catch (const DataError &e) {
        warnings.push_back(fmt::format("structure '{}' unreadable ({}); excluded",
                                       path->filename().string(), e.what()));
      }
    }
  }

  AssemblyOptions assembly;
  assembly.r_min = config.r_min;
  assembly.r_max = config.r_max;
  assembly.seriation_weighting = config.seriation_weighting;
  Datasets datasets = assemble_datasets(records, fasta.sequences, coordinates, scores, assembly);
  warnings.insert(warnings.end(), datasets.warnings.begin(), datasets.warnings.end());
  datasets.warnings = std::move(warnings);
  return datasets;
}

// ---------------------------------------------------------------------------
// Pipelines

namespace {

std::string default_dataset_name(const ExperimentConfig &c) {
  switch (c.representation) {
    case Representation::Seq:
    case Representation::SeqPam:
    case Representation::SeqLearned:
      return c.subset == SequenceSubset::All ? "sequences" : "sequences-with-structure";
    case Representation::GraphDirect: return "graphs";
    case Representation::Seriated: return "seriated";
    case Representation::ComplexityFeatures: return "complexity";
  }
  return "unknown";
}

std::string substitution_name(Representation r) {
  switch (r) {
    case Representation::Seq: return "unit";
    case Representation::SeqPam: return "pam120";
    case Representation::SeqLearned: return "evolved";
    case Representation::GraphDirect: return "graph-descriptor-substitute";
    case Representation::Seriated: return "euclidean";
    case Representation::ComplexityFeatures: return "gaussian";
  }
  return "unknown";
}

std::vector<std::string> read_id_list(const fs::path &path) {
  std::vector<std::string> ids;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    ids.emplace_back(t);
  }
  return ids;
}

DatasetSplit make_split(const ExperimentConfig &config, std::span<const LabeledId> items,
                        json *hashes) {
  if (!config.data.test_ids.empty()) {
    record_input(hashes, "test_ids", config.data.test_ids);
    const auto ids = read_id_list(config.data.test_ids);
    return split_explicit(items, ids);
  }
  const std::uint64_t seed = stage_seed(config.seed, "split");
  if (config.split.test_counts) return split_by_test_counts(items, *config.split.test_counts, seed);
  return split_by_fraction(items, config.split.train_fraction, seed);
}

// Orders `all` to match the ids of one side of a split.
template <typename Entry>
std::vector<const Entry *> select(const std::vector<Entry> &all,
                                  const std::vector<std::string> &ids) {
  std::unordered_map<std::string_view, const Entry *> by_id;
  for (const auto &e : all) by_id.emplace(e.protein_id, &e);
  std::vector<const Entry *> out;
  for (const auto &id : ids) out.push_back(by_id.at(id));
  return out;
}

struct KernelData {
  Eigen::MatrixXd train;  // n_train x n_train
  Eigen::MatrixXd test;   // n_test x n_train
  bool is_psd = true;
  double min_eigenvalue = 0.0;
  json details = json::object();
};

KernelData from_distances(const Eigen::MatrixXd &d_train, const Eigen::MatrixXd &d_cross,
                          const std::string &fingerprint) {
  CenteredKernel centered = center_to_kernel(d_train, fingerprint);
  KernelData k;
  k.train = centered.kernel.values;
  k.test = kernel_rows(d_cross, centered.stats);
  k.is_psd = centered.kernel.is_psd;
  k.min_eigenvalue = centered.kernel.min_eigenvalue;
  return k;
}

double median_pairwise_distance(const Eigen::MatrixXd &x) {
  std::vector<double> d;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < x.rows(); ++j) d.push_back((x.row(i) - x.row(j)).norm());
  }
  if (d.empty()) return 1.0;
  std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
  const double m = d[d.size() / 2];
  return m > 0.0 ? m : 1.0;
}

std::string ga_trace_csv(const GaResult &r) {
  std::string out = "generation,best_fitness\n";
  for (std::size_t g = 0; g < r.trace.size(); ++g) {
    out += fmt::format("{},{}\n", g, format_real(r.trace[g]));
  }
  return out;
}

struct Artifacts {
  std::map<std::string, std::string> files;  // name -> contents
};

KernelData sequence_kernel(const ExperimentConfig &config,
                           const std::vector<const LabeledSequence *> &train,
                           const std::vector<const LabeledSequence *> &test, Artifacts &artifacts,
                           json *hashes) {
  std::optional<CostScheme> scheme;
  switch (config.representation) {
    case Representation::Seq: scheme = CostScheme::unit(config.indel_cost); break;
    case Representation::SeqPam:
      scheme = CostScheme::matrix(pam_to_costs(pam120()), config.indel_cost);
      break;
    default: {
      CostMatrix costs;
      if (!config.data.cost_matrix.empty()) {
        record_input(hashes, "cost_matrix", config.data.cost_matrix);
        std::istringstream in(read_file(config.data.cost_matrix));
        costs = read_cost_matrix(in);
      } else {
        std::vector<LabeledSequence> labeled;
        for (const auto *s : train) labeled.push_back(*s);
        ControlSet control = in_stage("control-split", [&] {
          return make_control_set(labeled, config.control_fraction,
                                  stage_seed(config.seed, "control"));
        });
        control.indel_cost = config.indel_cost;
        control.balanced = config.balanced_fitness;
        control.svm.c = config.svm_c;
        control.svm.positive_weight = config.svm_positive_weight;
        control.svm.negative_weight = config.svm_negative_weight;
        GaConfig ga = config.ga;
        ga.seed = stage_seed(config.seed, "ga");
        ga.threads = config.threads;
        EvolvedCosts evolved = in_stage("evolve", [&] { return evolve_cost_matrix(ga, control); });
        costs = evolved.costs;
        artifacts.files["ga_trace.csv"] = ga_trace_csv(evolved.search);
      }
      std::ostringstream out;
      write_cost_matrix(out, costs);
      artifacts.files["learned_costs.txt"] = out.str();
      scheme = CostScheme::matrix(costs, config.indel_cost);
    }
  }
  std::vector<std::string> tr, te;
  for (const auto *s : train) tr.push_back(s->residues);
  for (const auto *s : test) te.push_back(s->residues);
  return from_distances(pairwise_distances(tr, *scheme, config.threads),
                        cross_distances(te, tr, *scheme, config.threads), scheme->fingerprint());
}

KernelData seriated_kernel(const ExperimentConfig &config,
                           const std::vector<const SeriatedEntry *> &train,
                           const std::vector<const SeriatedEntry *> &test) {
  const CostScheme scheme = CostScheme::vector_euclidean(config.vector_scale, config.indel_cost);
  std::vector<VectorSequence> tr, te;
  for (const auto *s : train) tr.push_back(s->sequence);
  for (const auto *s : test) te.push_back(s->sequence);
  return from_distances(pairwise_distances(tr, scheme, config.threads),
                        cross_distances(te, tr, scheme, config.threads), scheme.fingerprint());
}

KernelData descriptor_kernel(const std::vector<const GraphEntry *> &train,
                             const std::vector<const GraphEntry *> &test) {
  auto features = [](const std::vector<const GraphEntry *> &entries) {
    Eigen::MatrixXd f(entries.size(), 8);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      f.row(i) = graph_descriptor(entries[i]->graph).transpose();
    }
    return f;
  };
  Eigen::MatrixXd tr = features(train), te = features(test);
  const Eigen::RowVectorXd mean = tr.colwise().mean();
  Eigen::RowVectorXd sd = ((tr.rowwise() - mean).array().square().colwise().sum() /
                           static_cast<double>(tr.rows()))
                              .sqrt();
  for (Eigen::Index j = 0; j < sd.size(); ++j) {
    if (!(sd(j) > 0.0)) sd(j) = 1.0;
  }
  tr = (tr.rowwise() - mean).array().rowwise() / sd.array();
  te = (te.rowwise() - mean).array().rowwise() / sd.array();
  auto dist = [](const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    Eigen::MatrixXd d(a.rows(), b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < b.rows(); ++j) d(i, j) = (a.row(i) - b.row(j)).norm();
    }
    return d;
  };
  Eigen::MatrixXd d_train = dist(tr, tr);
  d_train = (0.5 * (d_train + d_train.transpose())).eval();
  d_train.diagonal().setZero();
  return from_distances(d_train, dist(te, tr), "graph-descriptor-euclidean");
}

KernelData complexity_kernel(const ExperimentConfig &config,
                             const std::vector<const GraphEntry *> &train,
                             const std::vector<const GraphEntry *> &test, Artifacts &artifacts) {
  AmbiguityOptions opts;
  opts.search_budget = config.ambiguity_budget;
  opts.seed = stage_seed(config.seed, "ambiguity");
  std::vector<GraphEntry> entries;
  for (const auto *g : train) entries.push_back(*g);
  for (const auto *g : test) entries.push_back(*g);
  const ComplexityReport report = complexity_features(entries, opts, config.threads);
  std::ostringstream csv;
  write_complexity_csv(csv, report);
  artifacts.files["complexity.csv"] = csv.str();

  Eigen::MatrixXd tr(train.size(), 2), te(test.size(), 2);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    Eigen::RowVector2d f(report.rows[i].entropy, report.rows[i].ambiguity);
    if (i < train.size()) tr.row(i) = f;
    else te.row(i - train.size()) = f;
  }
  const double sigma = config.gaussian_sigma > 0.0 ? config.gaussian_sigma
                                                   : median_pairwise_distance(tr);
  KernelMatrix k = gaussian_kernel(tr, sigma);
  KernelData out;
  out.train = k.values;
  out.test = gaussian_cross_kernel(te, tr, sigma);
  out.is_psd = k.is_psd;
  out.min_eigenvalue = k.min_eigenvalue;
  out.details["gaussian_sigma"] = sigma;
  return out;
}

std::string predictions_csv(const std::vector<std::string> &ids, std::span<const int> truth,
                            const std::vector<Prediction> &predictions) {
  std::string out = "protein_id,true_label,predicted_label,score\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto name = [](int y) { return y > 0 ? "soluble" : "insoluble"; };
    out += fmt::format("{},{},{},{}\n", ids[i], name(truth[i]), name(predictions[i].label),
                       format_real(predictions[i].score));
  }
  return out;
}

json reproducible_core(const ExperimentConfig &config, const ExperimentOptions &options,
                       const json &inputs) {
  json cfg = config.to_json();
  cfg.erase("out");
  json opts = json::object();
  if (options.shuffle_labels_seed) opts["shuffle_labels_seed"] = *options.shuffle_labels_seed;
  return {{"tool", "protfold"}, {"version", kVersion}, {"config", cfg},
          {"options", opts},    {"inputs", inputs}};
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig &config,
                                 const ExperimentOptions &options) {
  in_stage("config", [&] { config.validate(); });
  json inputs = json::object();
  ExperimentOutcome outcome;
  Datasets data = in_stage("load", [&] { return load_datasets(config, &inputs); });
  outcome.warnings = data.warnings;

  const Representation rep = config.representation;
  const bool sequence_rep = !needs_structures(rep);
  std::vector<LabeledSequence> sequence_pool;
  if (sequence_rep) {
    sequence_pool = config.subset == SequenceSubset::All ? data.sequences : data.graph_sequences();
  }
  std::vector<LabeledId> items;
  if (sequence_rep) {
    for (const auto &s : sequence_pool) items.emplace_back(s.protein_id, s.label);
  } else {
    for (const auto &g : data.graphs) items.emplace_back(g.protein_id, g.label);
  }
  if (items.empty()) throw DataError("stage 'split': no labeled proteins available");
  outcome.split = in_stage("split", [&] { return make_split(config, items, &inputs); });
  const auto &train_ids = outcome.split.train_ids;
  const auto &test_ids = outcome.split.test_ids;
  if (train_ids.empty() || test_ids.empty()) {
    throw DataError("stage 'split': train and test sets must both be non-empty");
  }

  std::unordered_map<std::string, SolubilityClass> label_of(items.begin(), items.end());
  std::vector<int> y_train, y_test;
  for (const auto &id : train_ids) y_train.push_back(class_sign(label_of.at(id)));
  for (const auto &id : test_ids) y_test.push_back(class_sign(label_of.at(id)));

  Artifacts artifacts;
  KernelData kernel = in_stage("represent", [&]() -> KernelData {
    switch (rep) {
      case Representation::Seq:
      case Representation::SeqPam:
      case Representation::SeqLearned:
        return sequence_kernel(config, select(sequence_pool, train_ids),
                               select(sequence_pool, test_ids), artifacts, &inputs);
      case Representation::Seriated:
        return seriated_kernel(config, select(data.seriated, train_ids),
                               select(data.seriated, test_ids));
      case Representation::GraphDirect:
        return descriptor_kernel(select(data.graphs, train_ids), select(data.graphs, test_ids));
      case Representation::ComplexityFeatures:
        return complexity_kernel(config, select(data.graphs, train_ids),
                                 select(data.graphs, test_ids), artifacts);
    }
    throw ConfigError("unsupported representation");
  });

  if (options.shuffle_labels_seed) {
    std::mt19937_64 rng(stage_seed(*options.shuffle_labels_seed, "label-shuffle"));
    std::shuffle(y_train.begin(), y_train.end(), rng);
  }

  SvmConfig svm;
  svm.c = config.svm_c;
  svm.positive_weight = config.svm_positive_weight;
  svm.negative_weight = config.svm_negative_weight;
  outcome.model = in_stage("train", [&] {
    SvmModel m = train(kernel.train, y_train, svm);
    m.kernel_fingerprint = kernel_fingerprint(kernel.train);
    return m;
  });

  std::vector<Prediction> predictions = in_stage("evaluate", [&] {
    std::vector<Prediction> out;
    for (Eigen::Index i = 0; i < kernel.test.rows(); ++i) {
      Eigen::VectorXd row = kernel.test.row(i).transpose();
      out.push_back(predict(outcome.model, {row.data(), static_cast<std::size_t>(row.size())}));
    }
    return out;
  });
  std::vector<int> predicted;
  for (const auto &p : predictions) predicted.push_back(p.label);

  outcome.row.dataset = config.dataset.empty() ? default_dataset_name(config) : config.dataset;
  outcome.row.representation = std::string(to_string(rep));
  outcome.row.substitution = substitution_name(rep);
  outcome.row.errors = error_report(predicted, y_test);

  in_stage("write", [&] {
    const json core = reproducible_core(config, options, inputs);
    outcome.manifest_hash = sha256_hex(core.dump());
    outcome.out_dir = config.out;

    std::ostringstream report;
    write_report_header(report);
    write_report_row(report, outcome.row, outcome.manifest_hash);
    artifacts.files["report.csv"] = report.str();
    artifacts.files["predictions.csv"] = predictions_csv(test_ids, y_test, predictions);
    json model = model_to_json(outcome.model);
    model["kernel"] = {{"is_psd", kernel.is_psd}, {"min_eigenvalue", kernel.min_eigenvalue}};
    model["kernel"].update(kernel.details);
    artifacts.files["model.json"] = model.dump(2) + "\n";
    artifacts.files["split.json"] = split_to_json(outcome.split).dump(2) + "\n";

    json outputs = json::object();
    for (const auto &[name, contents] : artifacts.files) {
      write_file(config.out / name, contents);
      outputs[name] = sha256_hex(contents);
    }
    json manifest = core;
    manifest["config"] = config.to_json();
    manifest["manifest_hash"] = outcome.manifest_hash;
    manifest["seeds"] = {{"root", config.seed},
                         {"split", stage_seed(config.seed, "split")},
                         {"control", stage_seed(config.seed, "control")},
                         {"ga", stage_seed(config.seed, "ga")},
                         {"ambiguity", stage_seed(config.seed, "ambiguity")}};
    manifest["outputs"] = outputs;
    manifest["warnings"] = outcome.warnings;
    manifest["toolchain"] = {{"compiler", __VERSION__}, {"cxx", __cplusplus}};
    write_file(config.out / "manifest.json", manifest.dump(2) + "\n");
    outcome.manifest = std::move(manifest);
  });
  return outcome;
}

ReplayOutcome replay_experiment(const fs::path &manifest_path, const fs::path &out_dir) {
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::parse_error &e) {
    throw ConfigError(fmt::format("manifest '{}': {}", manifest_path.string(), e.what()));
  }
  if (!manifest.contains("config") || !manifest.contains("inputs") ||
      !manifest.contains("outputs")) {
    throw ConfigError("manifest lacks config, inputs or outputs");
  }
  for (const auto &[name, entry] : manifest["inputs"].items()) {
    const fs::path path = entry.at("path").get<std::string>();
    if (!fs::is_regular_file(path)) {
      throw DataError(fmt::format("input '{}' ({}) is missing", name, path.string()));
    }
    if (file_sha256(path) != entry.at("sha256").get<std::string>()) {
      throw DataError(fmt::format("input '{}' ({}) changed since the recorded run", name,
                                  path.string()));
    }
  }
  ExperimentConfig config = ExperimentConfig::from_json(manifest["config"]);
  config.out = out_dir;
  ExperimentOptions options;
  if (auto it = manifest.find("options"); it != manifest.end() && it->contains("shuffle_labels_seed")) {
    options.shuffle_labels_seed = (*it)["shuffle_labels_seed"].get<std::uint64_t>();
  }

  ReplayOutcome replay;
  replay.outcome = run_experiment(config, options);
  const json &fresh = replay.outcome.manifest["outputs"];
  for (const auto &[name, hash] : manifest["outputs"].items()) {
    if (!fresh.contains(name) || fresh[name] != hash) replay.mismatched.push_back(name);
  }
  for (const auto &[name, hash] : fresh.items()) {
    if (!manifest["outputs"].contains(name)) replay.mismatched.push_back(name);
  }
  replay.identical = replay.mismatched.empty();
  return replay;
}

ShuffleControl label_shuffle_control(const ExperimentConfig &config, std::uint64_t seed) {
  ShuffleControl control;
  ExperimentConfig original = config;
  original.out = config.out / "original";
  control.original = run_experiment(original);
  ExperimentConfig shuffled = config;
  shuffled.out = config.out / "shuffled";
  ExperimentOptions options;
  options.shuffle_labels_seed = seed;
  control.shuffled = run_experiment(shuffled, options);

  std::ostringstream out;
  out << "labels,dataset,representation,substitution,err_ins,n_ins,err_sol,n_sol,rate_ins,"
         "rate_sol,global_rate,manifest_hash\n";
  std::ostringstream a, b;
  write_report_row(a, control.original.row, control.original.manifest_hash);
  write_report_row(b, control.shuffled.row, control.shuffled.manifest_hash);
  out << "original," << a.str() << "shuffled," << b.str();
  write_file(config.out / "shuffle_control.csv", out.str());
  return control;
}

BaselineResult run_baseline(const ExperimentConfig &config) {
  in_stage("config", [&] {
    ExperimentConfig seq = config;
    seq.representation = Representation::Seq;
    seq.validate();
  });
  json inputs = json::object();
  ExperimentConfig seq = config;
  seq.representation = Representation::Seq;
  Datasets data = in_stage("load", [&] { return load_datasets(seq, &inputs); });
  const auto pool = config.subset == SequenceSubset::All ? data.sequences : data.graph_sequences();
  std::vector<LabeledId> items;
  for (const auto &s : pool) items.emplace_back(s.protein_id, s.label);
  DatasetSplit split = in_stage("split", [&] { return make_split(seq, items, &inputs); });

  auto samples = [&](const std::vector<std::string> &ids) {
    std::vector<LengthSample> out;
    for (const auto *s : select(pool, ids)) out.emplace_back(s->residues.size(), s->label);
    return out;
  };
  BaselineResult result = in_stage("baseline", [&] {
    return baseline_length_classifier(samples(split.train_ids), samples(split.test_ids));
  });

  in_stage("write", [&] {
    std::ostringstream out;
    out << "threshold,train_errors,err_ins,n_ins,err_sol,n_sol,rate_ins,rate_sol,global_rate\n";
    const auto &e = result.test;
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", result.threshold, result.train_errors,
                       e.errors_negative, e.count_negative, e.errors_positive, e.count_positive,
                       format_real(e.rate_negative()), format_real(e.rate_positive()),
                       format_real(e.global_rate()));
    write_file(config.out / "baseline.csv", out.str());
    write_file(config.out / "split.json", split_to_json(split).dump(2) + "\n");
  });
  return result;
}

}  // namespace protfold
