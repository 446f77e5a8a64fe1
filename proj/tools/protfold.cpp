//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: one subcommand per pipeline stage plus `experiment`
// for end-to-end runs. Exit codes: 0 success, 1 unexpected failure, 2 config
// error, 3 data error, 4 numeric failure.
//

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "protfold/complexity.h"
#include "protfold/config.h"
#include "protfold/error.h"
#include "protfold/evolve.h"
#include "protfold/experiment.h"
#include "protfold/kernel.h"
#include "protfold/stats.h"
#include "protfold/util.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace protfold;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string representation;
  std::optional<double> svm_c;
  std::optional<double> r_min;
  std::optional<double> r_max;
  std::optional<int> threads;
};

void add_common(CLI::App *cmd, CommonFlags &f, bool config_required = true) {
  auto *opt = cmd->add_option("--config", f.config, "experiment configuration (.toml or .json)");
  if (config_required) opt->required();
  cmd->add_option("--seed", f.seed, "root random seed");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--representation", f.representation,
                  "seq | seq-pam | seq-learned | graph-direct | seriated | complexity-features");
  cmd->add_option("--svm-c", f.svm_c, "SVM box constraint C (default 2)");
  cmd->add_option("--r-min", f.r_min, "contact window lower bound in Angstrom (default 4)");
  cmd->add_option("--r-max", f.r_max, "contact window upper bound in Angstrom (default 8)");
  cmd->add_option("--threads", f.threads, "worker threads (0 = hardware concurrency)");
}

ExperimentConfig resolve(const CommonFlags &f) {
  ExperimentConfig c = f.config.empty() ? ExperimentConfig {} : load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  if (!f.out.empty()) c.out = f.out;
  if (!f.representation.empty()) c.representation = parse_representation(f.representation);
  if (f.svm_c) c.svm_c = *f.svm_c;
  if (f.r_min) c.r_min = *f.r_min;
  if (f.r_max) c.r_max = *f.r_max;
  if (f.threads) c.threads = *f.threads;
  return c;
}

void print_warnings(const std::vector<std::string> &warnings) {
  for (const auto &w : warnings) std::cerr << "warning: " << w << '\n';
}

void print_report(const ReportRow &row, const std::string &manifest_hash) {
  std::ostringstream out;
  write_report_header(out);
  write_report_row(out, row, manifest_hash);
  std::cout << out.str();
}

std::string sanitize(const std::string &id) {
  std::string s = id;
  for (char &c : s) {
    if (c == '/' || c == '\\' || c == ':') c = '_';
  }
  return s;
}

void run_ingest(const ExperimentConfig &c) {
  Datasets d = load_datasets(c);
  print_warnings(d.warnings);
  std::ostringstream fasta, labels;
  std::vector<ResidueSequence> seqs;
  labels << "protein_id,label,length\n";
  for (const auto &s : d.sequences) {
    seqs.push_back({s.protein_id, s.residues});
    labels << fmt::format("{},{},{}\n", s.protein_id, to_string(s.label), s.residues.size());
  }
  write_fasta(fasta, seqs);
  write_file(c.out / "sequences.fasta", fasta.str());
  write_file(c.out / "labels.csv", labels.str());
  std::string warnings;
  for (const auto &w : d.warnings) warnings += w + "\n";
  write_file(c.out / "warnings.txt", warnings);
  std::size_t sol = 0;
  for (const auto &s : d.sequences) sol += s.label == SolubilityClass::Soluble;
  std::cout << fmt::format("{} labeled sequences ({} soluble, {} insoluble), {} graphs\n",
                           d.sequences.size(), sol, d.sequences.size() - sol, d.graphs.size());
}

void run_build_graphs(const ExperimentConfig &c) {
  ExperimentConfig g = c;
  if (!needs_structures(g.representation)) g.representation = Representation::GraphDirect;
  Datasets d = load_datasets(g);
  print_warnings(d.warnings);
  std::ostringstream summary;
  summary << "protein_id,vertices,edges,components,label\n";
  for (const auto &e : d.graphs) {
    json provenance = {{"protein_id", e.protein_id},
                       {"r_min", g.r_min},
                       {"r_max", g.r_max},
                       {"label", to_string(e.label)}};
    write_file(g.out / "graphs" / (sanitize(e.protein_id) + ".json"),
               graph_to_json(e.graph, provenance).dump() + "\n");
    summary << fmt::format("{},{},{},{},{}\n", e.protein_id, e.graph.vertex_count(),
                           e.graph.edge_count(), e.graph.components().size(), to_string(e.label));
  }
  write_file(g.out / "graphs.csv", summary.str());
  std::cout << fmt::format("{} contact graphs written\n", d.graphs.size());
}

void run_seriate(const ExperimentConfig &c) {
  ExperimentConfig g = c;
  g.representation = Representation::Seriated;
  Datasets d = load_datasets(g);
  print_warnings(d.warnings);
  std::ostringstream summary;
  summary << "protein_id,length,disconnected,label\n";
  for (const auto &s : d.seriated) {
    std::ostringstream seq;
    seq << "position,c1,c2,c3\n";
    for (std::size_t i = 0; i < s.sequence.size(); ++i) {
      const auto &v = s.sequence[i];
      seq << fmt::format("{},{},{},{}\n", i, format_real(v.x()), format_real(v.y()),
                         format_real(v.z()));
    }
    write_file(g.out / "seriated" / (sanitize(s.protein_id) + ".csv"), seq.str());
    summary << fmt::format("{},{},{},{}\n", s.protein_id, s.sequence.size(),
                           s.disconnected ? "true" : "false", to_string(s.label));
  }
  write_file(g.out / "seriated.csv", summary.str());
  std::cout << fmt::format("{} seriated sequences written\n", d.seriated.size());
}

void run_distances(const ExperimentConfig &c, bool kernel) {
  Datasets d = load_datasets(c);
  print_warnings(d.warnings);
  Eigen::MatrixXd dist;
  std::vector<std::string> ids;
  std::string fingerprint;
  switch (c.representation) {
    case Representation::Seriated: {
      std::vector<VectorSequence> seqs;
      for (const auto &s : d.seriated) {
        seqs.push_back(s.sequence);
        ids.push_back(s.protein_id);
      }
      const auto scheme = CostScheme::vector_euclidean(c.vector_scale, c.indel_cost);
      dist = pairwise_distances(seqs, scheme, c.threads);
      fingerprint = scheme.fingerprint();
      break;
    }
    case Representation::Seq:
    case Representation::SeqPam:
    case Representation::SeqLearned: {
      std::optional<CostScheme> scheme;
      if (c.representation == Representation::Seq) {
        scheme = CostScheme::unit(c.indel_cost);
      } else if (c.representation == Representation::SeqPam) {
        scheme = CostScheme::matrix(pam_to_costs(pam120()), c.indel_cost);
      } else {
        if (c.data.cost_matrix.empty()) {
          throw ConfigError("seq-learned distances need data.cost_matrix (run `evolve` first)");
        }
        std::istringstream in(read_file(c.data.cost_matrix));
        scheme = CostScheme::matrix(read_cost_matrix(in), c.indel_cost);
      }
      const auto pool = c.subset == SequenceSubset::All ? d.sequences : d.graph_sequences();
      std::vector<std::string> seqs;
      for (const auto &s : pool) {
        seqs.push_back(s.residues);
        ids.push_back(s.protein_id);
      }
      dist = pairwise_distances(seqs, *scheme, c.threads);
      fingerprint = scheme->fingerprint();
      break;
    }
    default:
      throw ConfigError(fmt::format("`distances` does not support representation '{}'",
                                    to_string(c.representation)));
  }
  std::ostringstream bin, id_list;
  write_matrix_binary(bin, dist);
  for (const auto &id : ids) id_list << id << '\n';
  write_file(c.out / "distances.bin", bin.str());
  write_file(c.out / "ids.txt", id_list.str());
  if (kernel) {
    CenteredKernel k = center_to_kernel(dist, fingerprint);
    std::ostringstream kb;
    write_matrix_binary(kb, k.kernel.values);
    write_file(c.out / "kernel.bin", kb.str());
    std::cout << fmt::format("kernel: psd={} min_eigenvalue={}\n", k.kernel.is_psd,
                             format_real(k.kernel.min_eigenvalue));
  }
  std::cout << fmt::format("{} x {} distance matrix written\n", dist.rows(), dist.cols());
}

void run_evolve(const ExperimentConfig &c, const std::string &resume_path) {
  ExperimentConfig seq = c;
  seq.representation = Representation::SeqLearned;
  Datasets d = load_datasets(seq);
  print_warnings(d.warnings);
  const auto pool = c.subset == SequenceSubset::All ? d.sequences : d.graph_sequences();
  std::vector<LabeledId> items;
  for (const auto &s : pool) items.emplace_back(s.protein_id, s.label);
  DatasetSplit split;
  if (!c.data.test_ids.empty()) {
    std::vector<std::string> ids;
    std::istringstream in(read_file(c.data.test_ids));
    for (std::string line; std::getline(in, line);) {
      if (auto t = trim(line); !t.empty() && t.front() != '#') ids.emplace_back(t);
    }
    split = split_explicit(items, ids);
  } else if (c.split.test_counts) {
    split = split_by_test_counts(items, *c.split.test_counts, stage_seed(c.seed, "split"));
  } else {
    split = split_by_fraction(items, c.split.train_fraction, stage_seed(c.seed, "split"));
  }
  std::vector<LabeledSequence> train;
  std::unordered_map<std::string, const LabeledSequence *> by_id;
  for (const auto &s : pool) by_id[s.protein_id] = &s;
  for (const auto &id : split.train_ids) train.push_back(*by_id.at(id));

  ControlSet control = make_control_set(train, c.control_fraction, stage_seed(c.seed, "control"));
  control.indel_cost = c.indel_cost;
  control.balanced = c.balanced_fitness;
  control.svm.c = c.svm_c;
  GaConfig ga = c.ga;
  ga.seed = stage_seed(c.seed, "ga");
  ga.threads = c.threads;
  ga.checkpoint_path = (c.out / "ga_checkpoint.json").string();
  std::optional<json> resume;
  if (!resume_path.empty()) resume = json::parse(read_file(resume_path));
  EvolvedCosts evolved = evolve_cost_matrix(ga, control, resume ? &*resume : nullptr);

  std::ostringstream costs, trace;
  write_cost_matrix(costs, evolved.costs);
  trace << "generation,best_fitness\n";
  for (std::size_t g = 0; g < evolved.search.trace.size(); ++g) {
    trace << g << ',' << format_real(evolved.search.trace[g]) << '\n';
  }
  write_file(c.out / "learned_costs.txt", costs.str());
  write_file(c.out / "ga_trace.csv", trace.str());
  std::cout << fmt::format("best control fitness {} after {} generations{}\n",
                           format_real(*evolved.search.best.fitness), evolved.search.generations,
                           evolved.search.stagnated ? " (stagnated)" : "");
}

void run_complexity(const ExperimentConfig &c) {
  ExperimentConfig g = c;
  g.representation = Representation::ComplexityFeatures;
  Datasets d = load_datasets(g);
  print_warnings(d.warnings);
  AmbiguityOptions opts;
  opts.search_budget = c.ambiguity_budget;
  opts.seed = stage_seed(c.seed, "ambiguity");
  std::vector<GraphEntry> usable;
  for (const auto &e : d.graphs) {
    if (e.graph.edge_count() > 0) usable.push_back(e);
    else std::cerr << "warning: graph '" << e.protein_id << "' has no edges; skipped\n";
  }
  ComplexityReport report = complexity_features(usable, opts, c.threads);
  std::ostringstream rows, summary;
  write_complexity_csv(rows, report);
  write_complexity_summary(summary, report);
  write_file(c.out / "complexity.csv", rows.str());
  write_file(c.out / "complexity_summary.csv", summary.str());
  std::cout << summary.str();
}

struct StatsFlags {
  std::string descriptors;
  std::string component_scores;
  std::string cost_matrix;
  std::string out = "protfold-out";
  int components = 3;
  int cost_components = 7;
  int permutations = 0;
  std::uint64_t seed = 0;
  bool standardize_costs = false;
};

void run_stats(const StatsFlags &f) {
  Eigen::MatrixXd chem;
  std::vector<std::string> chem_names;
  if (!f.descriptors.empty()) {
    std::istringstream in(read_file(f.descriptors));
    ChemPhysTable table = read_descriptor_csv(in);
    PcaResult p = pca(table.values, f.components, true);
    std::ostringstream t;
    write_pca_table(t, p);
    write_file(fs::path(f.out) / "descriptor_pca.csv", t.str());
    write_file(fs::path(f.out) / "descriptor_pca.json", pca_to_json(p).dump(2) + "\n");
    std::ostringstream scores;
    write_scores_csv(scores, p.scores);
    write_file(fs::path(f.out) / "component_scores.csv", scores.str());
    std::cout << "descriptor PCA\n" << t.str();
    chem = p.scores;
  } else if (!f.component_scores.empty()) {
    std::istringstream in(read_file(f.component_scores));
    chem = read_scores_csv(in);
  }
  for (Eigen::Index j = 0; j < chem.cols(); ++j) chem_names.push_back(fmt::format("ChemPhys{}", j + 1));

  if (f.cost_matrix.empty()) {
    if (chem.size() == 0) throw ConfigError("stats needs --descriptors, --component-scores or --cost-matrix");
    return;
  }
  std::istringstream in(read_file(f.cost_matrix));
  const CostMatrix costs = read_cost_matrix(in);
  PcaResult sp = components_of_cost_matrix(costs, f.cost_components, f.standardize_costs);
  std::ostringstream st;
  write_pca_table(st, sp);
  write_file(fs::path(f.out) / "cost_pca.csv", st.str());
  std::cout << "cost matrix PCA\n" << st.str();
  if (chem.size() == 0) return;

  CcaResult r = cca(chem, sp.scores);
  Eigen::VectorXd p_values;
  if (f.permutations > 0) p_values = cca_permutation_test(chem, sp.scores, f.permutations, f.seed);
  std::ostringstream cc, xs, ys;
  write_cca_table(cc, r, p_values);
  std::vector<std::string> svm_names;
  for (Eigen::Index j = 0; j < sp.scores.cols(); ++j) svm_names.push_back(fmt::format("SVM{}", j + 1));
  write_structure_table(xs, r.x_structure, chem_names);
  write_structure_table(ys, r.y_structure, svm_names);
  write_file(fs::path(f.out) / "cca.csv", cc.str());
  write_file(fs::path(f.out) / "cca_chemphys_structure.csv", xs.str());
  write_file(fs::path(f.out) / "cca_cost_structure.csv", ys.str());
  write_file(fs::path(f.out) / "cca.json", cca_to_json(r).dump(2) + "\n");
  std::cout << "canonical correlations\n" << cc.str();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app {"protfold: protein solubility classification on sequences, contact graphs and "
                "seriated graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "protfold 0.1.0");

  CommonFlags common;
  auto *ingest = app.add_subcommand("ingest", "load and validate inputs, write cleaned tables");
  add_common(ingest, common);
  auto *graphs = app.add_subcommand("build-graphs", "build contact graphs from CA coordinates");
  add_common(graphs, common);
  auto *ser = app.add_subcommand("seriate", "seriate contact graphs into vector sequences");
  add_common(ser, common);
  auto *dist = app.add_subcommand("distances", "pairwise Levenshtein distances (and kernel)");
  add_common(dist, common);
  bool with_kernel = false;
  dist->add_flag("--kernel", with_kernel, "also write the double-centered kernel");
  auto *train_cmd = app.add_subcommand("train", "train and evaluate the configured pipeline");
  add_common(train_cmd, common);
  auto *evolve = app.add_subcommand("evolve", "learn a substitution cost matrix with the GA");
  add_common(evolve, common);
  std::string resume;
  evolve->add_option("--resume", resume, "GA checkpoint to resume from");
  auto *complexity = app.add_subcommand("complexity", "graph entropy and ambiguity per protein");
  add_common(complexity, common);
  std::optional<std::size_t> budget;
  complexity->add_option("--budget", budget, "ambiguity search budget (evaluated partitions)");

  StatsFlags stats_flags;
  auto *stats = app.add_subcommand("stats", "PCA of descriptors and cost matrix, and their CCA");
  stats->add_option("--descriptors", stats_flags.descriptors, "residue descriptor CSV");
  stats->add_option("--component-scores", stats_flags.component_scores, "residue score CSV");
  stats->add_option("--cost-matrix", stats_flags.cost_matrix, "cost matrix text file");
  stats->add_option("--components", stats_flags.components, "descriptor components (default 3)");
  stats->add_option("--cost-components", stats_flags.cost_components,
                    "cost matrix components (default 7)");
  stats->add_flag("--standardize-costs", stats_flags.standardize_costs,
                  "PCA of the cost matrix on correlations instead of covariances");
  stats->add_option("--permutations", stats_flags.permutations, "CCA permutation test size");
  stats->add_option("--seed", stats_flags.seed, "permutation seed");
  stats->add_option("--out", stats_flags.out, "output directory");

  auto *experiment = app.add_subcommand("experiment", "end-to-end run with report and manifest");
  add_common(experiment, common, false);
  std::string manifest;
  std::optional<std::uint64_t> shuffle_seed;
  experiment->add_option("--manifest", manifest, "replay the run recorded in this manifest");
  experiment->add_option("--shuffle-control", shuffle_seed,
                         "also run with training labels permuted by this seed");
  auto *baseline = app.add_subcommand("baseline", "sequence-length threshold classifier");
  add_common(baseline, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*stats) {
      run_stats(stats_flags);
      return 0;
    }
    if (*experiment && !manifest.empty()) {
      const fs::path out = common.out.empty() ? fs::path("protfold-replay") : fs::path(common.out);
      ReplayOutcome r = replay_experiment(manifest, out);
      print_warnings(r.outcome.warnings);
      print_report(r.outcome.row, r.outcome.manifest_hash);
      if (!r.identical) {
        for (const auto &name : r.mismatched) std::cerr << "replay mismatch: " << name << '\n';
        return 1;
      }
      std::cout << "replay identical\n";
      return 0;
    }
    if (*experiment && common.config.empty()) {
      throw ConfigError("experiment needs --config or --manifest");
    }

    ExperimentConfig config = resolve(common);
    if (*complexity && budget) config.ambiguity_budget = *budget;
    if (*ingest) run_ingest(config);
    else if (*graphs) run_build_graphs(config);
    else if (*ser) run_seriate(config);
    else if (*dist) run_distances(config, with_kernel);
    else if (*evolve) run_evolve(config, resume);
    else if (*complexity) run_complexity(config);
    else if (*baseline) {
      BaselineResult b = run_baseline(config);
      std::cout << fmt::format("threshold {} (train errors {}); test errors {}/{} insoluble, "
                               "{}/{} soluble, global rate {}\n",
                               b.threshold, b.train_errors, b.test.errors_negative,
                               b.test.count_negative, b.test.errors_positive,
                               b.test.count_positive, format_real(b.test.global_rate()));
    } else if (*experiment && shuffle_seed) {
      ShuffleControl s = label_shuffle_control(config, *shuffle_seed);
      print_warnings(s.original.warnings);
      std::cout << read_file(config.out / "shuffle_control.csv");
    } else {
      ExperimentOutcome o = run_experiment(config);
      print_warnings(o.warnings);
      print_report(o.row, o.manifest_hash);
    }
    return 0;
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DataError &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const NumericError &e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 4;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
