//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"
#include "protfold/error.h"
#include "protfold/experiment.h"
#include "protfold/util.h"

using namespace protfold;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<LengthSample> samples(std::initializer_list<std::pair<int, char>> items) {
  std::vector<LengthSample> out;
  for (auto [len, c] : items) {
    out.emplace_back(len, c == 'S' ? SolubilityClass::Soluble : SolubilityClass::Insoluble);
  }
  return out;
}

int run_cli(const std::string &args) {
  const std::string cmd = std::string(PROTFOLD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_config(const fs::path &path, const ExperimentConfig &c) {
  std::ofstream(path) << c.to_json().dump(2);
}

}  // namespace

TEST(Baseline, TwoPointTieRule) {
  auto train = samples({{100, 'S'}, {300, 'I'}});
  auto r = baseline_length_classifier(train, train);
  EXPECT_EQ(r.threshold, 300u);
  EXPECT_EQ(r.train_errors, 0u);
  EXPECT_EQ(r.test.global_rate(), 0.0);
}

TEST(Baseline, InterleavedLengthsErrOnMinority) {
  auto train = samples({{10, 'S'}, {20, 'I'}, {30, 'S'}, {40, 'I'}, {50, 'S'}, {60, 'I'}, {70, 'I'}});
  auto r = baseline_length_classifier(train, train);
  auto brute = oracle::baseline_by_scan(train);
  EXPECT_EQ(r.train_errors, brute.min_errors);
  EXPECT_EQ(r.train_errors, 2u);
}

TEST(Baseline, PlantedThreshold246) {
  std::vector<LengthSample> train;
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> len(50, 600);
  for (int i = 0; i < 300; ++i) {
    const int l = len(rng);
    train.emplace_back(l, l < 246 ? SolubilityClass::Soluble : SolubilityClass::Insoluble);
  }
  train.emplace_back(245, SolubilityClass::Soluble);
  train.emplace_back(246, SolubilityClass::Insoluble);
  auto r = baseline_length_classifier(train, train);
  EXPECT_EQ(r.threshold, 246u);
  EXPECT_EQ(r.train_errors, 0u);
}

TEST(Baseline, MatchesBruteForceIntegerScan) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<int> count(2, 40), len(20, 80);
    std::bernoulli_distribution coin(0.5);
    std::vector<LengthSample> train;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      train.emplace_back(len(rng), coin(rng) ? SolubilityClass::Soluble : SolubilityClass::Insoluble);
    }
    train.emplace_back(len(rng), SolubilityClass::Soluble);
    train.emplace_back(len(rng), SolubilityClass::Insoluble);
    auto r = baseline_length_classifier(train, train);
    auto brute = oracle::baseline_by_scan(train);
    EXPECT_EQ(r.train_errors, brute.min_errors) << "trial " << trial;
    for (std::size_t i = 0; i < train.size(); ++i) {
      const int predicted = train[i].first < r.threshold ? 1 : -1;
      EXPECT_EQ(predicted, brute.predictions_at_smallest[i]) << "trial " << trial;
    }
  }
}

TEST(Baseline, SingleClassRejected) {
  auto train = samples({{10, 'S'}, {20, 'S'}});
  EXPECT_THROW(baseline_length_classifier(train, train), DataError);
}

TEST(Pipeline, SeqOnSeparableCorpusHasNoErrors) {
  fixture::TempDir dir("pipeline-seq");
  fixture::CorpusOptions opts;
  opts.soluble = 5;
  opts.insoluble = 5;
  fixture::write_corpus(dir.path(), opts);
  auto c = fixture::corpus_config(dir.path(), Representation::Seq);
  c.split.train_fraction = 0.6;
  auto out = run_experiment(c);
  EXPECT_EQ(out.row.errors.global_rate(), 0.0);
  EXPECT_EQ(out.row.errors.count_negative + out.row.errors.count_positive, 4u);
  for (const char *name : {"report.csv", "predictions.csv", "model.json", "split.json",
                           "manifest.json"}) {
    EXPECT_TRUE(fs::exists(out.out_dir / name)) << name;
  }
  const std::string report = slurp(out.out_dir / "report.csv");
  EXPECT_EQ(report.substr(0, report.find('\n')),
            "dataset,representation,substitution,err_ins,n_ins,err_sol,n_sol,rate_ins,rate_sol,"
            "global_rate,manifest_hash");
  EXPECT_NE(report.find(out.manifest_hash), std::string::npos);
}

TEST(Pipeline, EveryRepresentationRunsEndToEnd) {
  fixture::TempDir dir("pipeline-all");
  fixture::write_corpus(dir.path());
  for (auto r : {Representation::Seq, Representation::SeqPam, Representation::SeqLearned,
                 Representation::GraphDirect, Representation::Seriated,
                 Representation::ComplexityFeatures}) {
    auto c = fixture::corpus_config(dir.path(), r);
    c.out = dir.path() / std::string(to_string(r));
    auto out = run_experiment(c);
    EXPECT_EQ(out.row.representation, to_string(r));
    EXPECT_TRUE(fs::exists(out.out_dir / "report.csv"));
    if (r != Representation::ComplexityFeatures) {
      EXPECT_EQ(out.row.errors.global_rate(), 0.0) << to_string(r);
    }
  }
  EXPECT_TRUE(fs::exists(dir.path() / "seq-learned" / "learned_costs.txt"));
  EXPECT_TRUE(fs::exists(dir.path() / "seq-learned" / "ga_trace.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "complexity-features" / "complexity.csv"));
}

TEST(Pipeline, RerunsAreByteIdentical) {
  fixture::TempDir dir("pipeline-rerun");
  fixture::write_corpus(dir.path());
  for (auto r : {Representation::Seriated, Representation::SeqLearned}) {
    auto c = fixture::corpus_config(dir.path(), r);
    c.out = dir.path() / "a";
    auto a = run_experiment(c);
    c.out = dir.path() / "b";
    auto b = run_experiment(c);
    for (const char *name : {"report.csv", "predictions.csv", "model.json"}) {
      EXPECT_EQ(slurp(dir.path() / "a" / name), slurp(dir.path() / "b" / name)) << name;
    }
    EXPECT_EQ(a.manifest_hash, b.manifest_hash);
  }
}

TEST(Pipeline, ReplayFromManifestIsIdentical) {
  fixture::TempDir dir("pipeline-replay");
  fixture::write_corpus(dir.path());
  auto c = fixture::corpus_config(dir.path(), Representation::Seriated);
  auto first = run_experiment(c);
  auto replay = replay_experiment(first.out_dir / "manifest.json", dir.path() / "replay");
  EXPECT_TRUE(replay.identical);
  EXPECT_TRUE(replay.mismatched.empty());
  EXPECT_EQ(slurp(first.out_dir / "report.csv"), slurp(dir.path() / "replay" / "report.csv"));

  // A modified input is detected before anything is recomputed.
  std::ofstream(dir.path() / "solubility.csv", std::ios::app) << "extra,0.9\n";
  EXPECT_THROW(replay_experiment(first.out_dir / "manifest.json", dir.path() / "replay2"),
               DataError);
}

TEST(Pipeline, LabelShuffleDegradesAccuracy) {
  fixture::TempDir dir("pipeline-shuffle");
  fixture::CorpusOptions opts;
  opts.soluble = 20;
  opts.insoluble = 20;
  opts.with_structure_soluble = 0;
  opts.with_structure_insoluble = 0;
  fixture::write_corpus(dir.path(), opts);
  auto c = fixture::corpus_config(dir.path(), Representation::Seq);
  c.data.structures.clear();
  auto control = label_shuffle_control(c, 17);
  const double original = control.original.row.errors.global_rate();
  const double shuffled = control.shuffled.row.errors.global_rate();
  EXPECT_EQ(original, 0.0);
  EXPECT_GT(shuffled, 2.0 * original);
  EXPECT_GT(shuffled, 0.2);
  EXPECT_TRUE(fs::exists(c.out / "shuffle_control.csv"));
  auto again = label_shuffle_control(c, 17);
  EXPECT_EQ(again.shuffled.row.errors.global_rate(), shuffled);
}

TEST(Pipeline, StageNamedInErrors) {
  fixture::TempDir dir("pipeline-errors");
  fixture::write_corpus(dir.path());
  auto c = fixture::corpus_config(dir.path(), Representation::Seq);
  c.svm_c = -1.0;
  try {
    run_experiment(c);
    FAIL();
  } catch (const ConfigError &e) {
    EXPECT_NE(std::string(e.what()).find("stage 'config'"), std::string::npos) << e.what();
  }
  c.svm_c = 2.0;
  write_file(dir.path() / "sequences.fasta", "no header line\nACDE\n");
  try {
    run_experiment(c);
    FAIL();
  } catch (const DataError &e) {
    EXPECT_NE(std::string(e.what()).find("stage 'load'"), std::string::npos) << e.what();
  }
}

TEST(Pipeline, BaselineWritesReport) {
  fixture::TempDir dir("pipeline-baseline");
  fixture::write_corpus(dir.path());
  auto c = fixture::corpus_config(dir.path(), Representation::Seq);
  auto r = run_baseline(c);
  EXPECT_GT(r.threshold, 0u);
  EXPECT_TRUE(fs::exists(c.out / "baseline.csv"));
}

TEST(Cli, ExitCodes) {
  fixture::TempDir dir("cli");
  fixture::write_corpus(dir.path());
  auto c = fixture::corpus_config(dir.path(), Representation::Seq);
  write_config(dir.path() / "ok.json", c);
  const std::string ok = (dir.path() / "ok.json").string();
  EXPECT_EQ(run_cli("experiment --config " + ok), 0);
  EXPECT_EQ(run_cli("baseline --config " + ok), 0);
  EXPECT_EQ(run_cli("ingest --config " + ok), 0);
  EXPECT_EQ(run_cli("distances --kernel --config " + ok), 0);
  EXPECT_EQ(run_cli("experiment --config " + ok + " --representation seriated --r-min 4 --r-max 8"), 0);
  EXPECT_EQ(run_cli("build-graphs --config " + ok), 0);
  EXPECT_EQ(run_cli("seriate --config " + ok), 0);
  EXPECT_EQ(run_cli("complexity --config " + ok + " --budget 200"), 0);

  EXPECT_EQ(run_cli("experiment --config " + (dir.path() / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("experiment --config " + ok + " --svm-c -3"), 2);
  EXPECT_EQ(run_cli("experiment --bogus-flag"), 2);
  EXPECT_EQ(run_cli("experiment --config " + ok + " --representation psi-blast"), 2);

  write_file(dir.path() / "sequences.fasta", "no header line\nACDE\n");
  EXPECT_EQ(run_cli("experiment --config " + ok), 3);
}

TEST(Cli, ReplayAndStats) {
  fixture::TempDir dir("cli-replay");
  fixture::write_corpus(dir.path());
  auto c = fixture::corpus_config(dir.path(), Representation::Seq);
  write_config(dir.path() / "ok.json", c);
  ASSERT_EQ(run_cli("experiment --config " + (dir.path() / "ok.json").string()), 0);
  EXPECT_EQ(run_cli("experiment --manifest " + (c.out / "manifest.json").string() + " --out " +
                    (dir.path() / "again").string()),
            0);
  EXPECT_EQ(slurp(c.out / "report.csv"), slurp(dir.path() / "again" / "report.csv"));

  // Stats needs a cost matrix; a unit matrix has identical rows apart from
  // the diagonal, which still leaves variance.
  std::ofstream costs(dir.path() / "unit.txt");
  write_cost_matrix(costs, CostMatrix::unit());
  costs.close();
  EXPECT_EQ(run_cli("stats --component-scores " + (dir.path() / "scores.csv").string() +
                    " --cost-matrix " + (dir.path() / "unit.txt").string() +
                    " --permutations 19 --out " + (dir.path() / "stats").string()),
            0);
  EXPECT_TRUE(fs::exists(dir.path() / "stats"));
}
