//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"
#include "protfold/complexity.h"
#include "protfold/error.h"

using namespace protfold;

TEST(Renyi, WorkedExample) {
  const std::vector<double> pi {0.5, 0.25, 0.25};
  EXPECT_NEAR(renyi2_entropy(pi), -std::log(0.375) / std::log(3.0), 1e-15);
  EXPECT_NEAR(renyi2_entropy(pi), 0.8928, 1e-4);
  EXPECT_NEAR(renyi2_entropy(pi, false), -std::log(0.375), 1e-15);
  EXPECT_NEAR(graph_entropy(fixture::path_graph(3)), 0.8928, 1e-4);
}

TEST(Renyi, UniformAndDegenerate) {
  for (int n : {2, 5, 17}) {
    std::vector<double> uniform(n, 1.0 / n);
    EXPECT_NEAR(renyi2_entropy(uniform), 1.0, 1e-12);
    std::vector<double> point(n, 0.0);
    point[n / 2] = 1.0;
    EXPECT_EQ(renyi2_entropy(point), 0.0);
  }
  const std::vector<double> single {1.0};
  EXPECT_EQ(renyi2_entropy(single), 0.0);
  EXPECT_NEAR(graph_entropy(fixture::regular_graph(9, 4)), 1.0, 1e-12);
}

TEST(Renyi, RejectsInvalidDistributions) {
  const std::vector<double> bad_sum {0.5, 0.6};
  EXPECT_THROW(renyi2_entropy(bad_sum), DataError);
  const std::vector<double> negative {1.5, -0.5};
  EXPECT_THROW(renyi2_entropy(negative), DataError);
  EXPECT_THROW(graph_entropy(fixture::make_graph(3, {})), NumericError);
}

TEST(Renyi, MixingTowardUniformNeverDecreases) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 15;
    std::vector<double> p(n);
    for (auto &x : p) x = u(rng) * u(rng);
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto &x : p) x /= s;
    double previous = renyi2_entropy(p);
    for (double lambda = 0.1; lambda <= 1.0 + 1e-12; lambda += 0.1) {
      std::vector<double> mixed(n);
      for (int i = 0; i < n; ++i) mixed[i] = (1 - lambda) * p[i] + lambda / n;
      const double h = renyi2_entropy(mixed);
      EXPECT_GE(h, previous - 1e-12);
      EXPECT_LE(h, 1.0 + 1e-12);
      previous = h;
    }
  }
}

TEST(Fuzzify, CompleteGraphBlocks) {
  const auto k4 = fixture::complete_graph(4);
  for (double mu : fuzzify_partition(k4, {0, 0, 0, 0})) EXPECT_DOUBLE_EQ(mu, 1.0);
  for (double mu : fuzzify_partition(k4, {0, 0, 1, 1})) EXPECT_NEAR(mu, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(fuzzy_entropy(fuzzify_partition(k4, {0, 0, 1, 1})),
              oracle::de_luca_termini(std::vector<double>(4, 1.0 / 3.0)), 1e-15);
}

TEST(Fuzzify, MatchesMembershipOracle) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 60; ++t) {
    const int n = 3 + t % 10;
    auto g = fixture::random_graph(n, 0.35, rng);
    std::uniform_int_distribution<int> pick(0, 2);
    Partition p(n);
    for (auto &b : p) b = pick(rng);
    auto mu = fuzzify_partition(g, p);
    auto expected = oracle::memberships(g, p);
    for (int v = 0; v < n; ++v) {
      EXPECT_NEAR(mu[v], expected[v], 1e-15);
      EXPECT_GE(mu[v], 0.0);
      EXPECT_LE(mu[v], 1.0);
    }
    EXPECT_NEAR(fuzzy_entropy(mu), oracle::de_luca_termini(expected), 1e-12);
    EXPECT_EQ(is_admissible(g, p), oracle::admissible(g, p));
  }
}

TEST(FuzzyEntropy, Extremes) {
  EXPECT_EQ(fuzzy_entropy(std::vector<double> {0.0, 1.0, 1.0}), 0.0);
  EXPECT_NEAR(fuzzy_entropy(std::vector<double> {0.5, 0.5}), 1.0, 1e-12);
  EXPECT_EQ(fuzzy_entropy(std::vector<double> {0.3}), fuzzy_entropy(std::vector<double> {0.7}));
}

TEST(Ambiguity, SingleVertexIsZero) {
  auto g = fixture::make_graph(1, {});
  EXPECT_EQ(ambiguity(g).value, 0.0);
}

TEST(Ambiguity, CompleteGraphsAreZero) {
  for (int n = 3; n <= 8; ++n) {
    auto r = ambiguity(fixture::complete_graph(n));
    EXPECT_TRUE(r.exhaustive);
    EXPECT_EQ(r.value, 0.0) << "K_" << n;
  }
}

TEST(Ambiguity, RegularGraphsAreZero) {
  for (auto [n, d] : std::vector<std::pair<int, int>> {{5, 2}, {6, 2}, {8, 3}, {8, 4}, {10, 3},
                                                       {10, 6}, {9, 4}}) {
    auto r = ambiguity(fixture::regular_graph(n, d));
    EXPECT_TRUE(r.exhaustive);
    EXPECT_EQ(r.value, 0.0) << n << "," << d;
  }
}

TEST(Ambiguity, StarMatchesEnumeration) {
  for (int leaves = 2; leaves <= 6; ++leaves) {
    auto g = fixture::star_graph(leaves);
    auto r = ambiguity(g);
    EXPECT_GT(r.value, 0.0);
    EXPECT_NEAR(r.value, oracle::ambiguity_by_enumeration(g), 1e-12);
    EXPECT_TRUE(is_admissible(g, r.partition));
    EXPECT_NEAR(fuzzy_entropy(fuzzify_partition(g, r.partition)), r.value, 1e-12);
  }
}

TEST(Ambiguity, ExhaustiveMatchesRecursiveEnumeration) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 25; ++t) {
    auto g = fixture::random_graph(3 + t % 6, 0.45, rng);
    EXPECT_NEAR(ambiguity_exhaustive(g).value, oracle::ambiguity_by_enumeration(g), 1e-12);
  }
}

TEST(Ambiguity, HeuristicEqualsExhaustiveUpToTen) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 50; ++t) {
    const int n = 3 + t % 8;
    auto g = fixture::random_connected_graph(n, 0.2 + 0.01 * t, rng);
    AmbiguityOptions opts;
    opts.seed = 1000 + t;
    auto exact = ambiguity_exhaustive(g);
    auto heuristic = ambiguity_heuristic(g, opts);
    EXPECT_NEAR(heuristic.value, exact.value, 1e-12) << "graph " << t << " n=" << n;
    EXPECT_LE(heuristic.evaluations, opts.search_budget);
  }
}

TEST(Ambiguity, HeuristicBelowSampledPartitions) {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 10; ++t) {
    auto g = fixture::random_connected_graph(30, 0.12, rng);
    AmbiguityOptions opts;
    opts.seed = t;
    auto r = ambiguity(g, opts);
    EXPECT_FALSE(r.exhaustive);
    EXPECT_TRUE(is_admissible(g, r.partition));
    EXPECT_GE(r.value, 0.0);
    EXPECT_LE(r.value, 1.0);
    // Whole-graph partition and the connected-pair split are both admissible.
    EXPECT_LE(r.value, fuzzy_entropy(fuzzify_partition(g, Partition(30, 0))) + 1e-15);
    EXPECT_EQ(ambiguity(g, opts).value, r.value);
  }
}

TEST(Ambiguity, RelabelingInvariance) {
  std::mt19937_64 rng(46);
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + t % 7;
    auto g = fixture::random_connected_graph(n, 0.3, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_NEAR(ambiguity(g).value, ambiguity(g.permuted(perm)).value, 1e-12);
  }
}

TEST(Ambiguity, RefusesLargeExhaustiveSearch) {
  EXPECT_THROW(ambiguity_exhaustive(fixture::cycle_graph(20)), ConfigError);
}

TEST(Features, IdenticalGraphsAndSummary) {
  std::mt19937_64 rng(47);
  auto g = fixture::random_connected_graph(14, 0.25, rng);
  auto h = fixture::cycle_graph(12);
  std::vector<GraphEntry> entries {{"a", g, SolubilityClass::Soluble},
                                   {"b", g, SolubilityClass::Soluble},
                                   {"c", h, SolubilityClass::Insoluble},
                                   {"d", fixture::star_graph(5), SolubilityClass::Insoluble}};
  auto report = complexity_features(entries, {}, 2);
  ASSERT_EQ(report.rows.size(), 4u);
  EXPECT_EQ(report.rows[0].entropy, report.rows[1].entropy);
  EXPECT_NEAR(report.rows[2].entropy, 1.0, 1e-12);
  EXPECT_EQ(report.rows[2].ambiguity, 0.0);
  EXPECT_EQ(report.soluble.count, 2u);
  EXPECT_EQ(report.soluble.entropy_sd, 0.0);
  EXPECT_NEAR(report.insoluble.ambiguity_mean, report.rows[3].ambiguity / 2.0, 1e-15);
  EXPECT_NEAR(report.insoluble.ambiguity_sd, report.rows[3].ambiguity / std::sqrt(2.0), 1e-12);

  std::ostringstream csv, summary;
  write_complexity_csv(csv, report);
  write_complexity_summary(summary, report);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "protein_id,entropy,ambiguity,label");
  EXPECT_NE(summary.str().find("soluble,2,"), std::string::npos);

  auto again = complexity_features(entries, {}, 1);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(again.rows[i].ambiguity, report.rows[i].ambiguity);
}

TEST(Features, EdgelessGraphRejected) {
  std::vector<GraphEntry> entries {{"x", fixture::make_graph(3, {}), SolubilityClass::Soluble}};
  EXPECT_THROW(complexity_features(entries), DataError);
}
