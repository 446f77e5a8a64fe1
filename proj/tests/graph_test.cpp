//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"
#include "protfold/error.h"
#include "protfold/graph.h"

using namespace protfold;

namespace {

std::vector<Vec3> attrs_for(int n) {
  std::vector<Vec3> a;
  for (int i = 0; i < n; ++i) a.emplace_back(i, 2.0 * i, -i);
  return a;
}

// Vertex order from sorting an externally computed distribution, descending,
// ties by index.
std::vector<int> order_by(const Eigen::VectorXd &pi) {
  std::vector<int> order(pi.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return pi(a) > pi(b); });
  return order;
}

Eigen::MatrixXd weighted_transition(const LabeledGraph &g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto &e : g.edges()) w(e.u, e.v) = w(e.v, e.u) = e.length;
  for (int i = 0; i < n; ++i) w.row(i) /= w.row(i).sum();
  return w;
}

}  // namespace

TEST(ContactGraph, CollinearPoints) {
  std::vector<Vec3> p {{0, 0, 0}, {5, 0, 0}, {10, 0, 0}};
  auto cg = build_contact_graph(p, attrs_for(3));
  ASSERT_EQ(cg.graph.edge_count(), 2u);
  EXPECT_EQ(cg.graph.edges()[0].u, 0);
  EXPECT_EQ(cg.graph.edges()[0].v, 1);
  EXPECT_DOUBLE_EQ(cg.graph.edges()[0].length, 5.0);
  EXPECT_EQ(cg.graph.edges()[1].u, 1);
  EXPECT_EQ(cg.graph.edges()[1].v, 2);
  EXPECT_FALSE(cg.no_edges);
}

TEST(ContactGraph, StrictBounds) {
  std::vector<Vec3> four {{0, 0, 0}, {4, 0, 0}};
  auto a = build_contact_graph(four, attrs_for(2));
  EXPECT_EQ(a.graph.edge_count(), 0u);
  EXPECT_TRUE(a.no_edges);
  std::vector<Vec3> eight {{0, 0, 0}, {8, 0, 0}};
  EXPECT_EQ(build_contact_graph(eight, attrs_for(2)).graph.edge_count(), 0u);
}

TEST(ContactGraph, TooFewResidues) {
  std::vector<Vec3> one {{0, 0, 0}};
  EXPECT_THROW(build_contact_graph(one, attrs_for(1)), DataError);
}

TEST(ContactGraph, MatchesBruteForceFilter) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> box(0.0, 15.0);
  for (int t = 0; t < 30; ++t) {
    std::vector<Vec3> p;
    for (int i = 0; i < 20; ++i) p.emplace_back(box(rng), box(rng), box(rng));
    auto cg = build_contact_graph(p, attrs_for(20));
    auto expected = oracle::contact_pairs(p, 4.0, 8.0);
    std::set<std::pair<int, int>> got;
    for (const auto &e : cg.graph.edges()) {
      got.insert({e.u, e.v});
      EXPECT_GT(e.length, 4.0);
      EXPECT_LT(e.length, 8.0);
    }
    const std::set<std::pair<int, int>> want(expected.begin(), expected.end());
    EXPECT_EQ(got, want);
    Eigen::MatrixXd a = cg.graph.adjacency();
    EXPECT_TRUE(a.isApprox(a.transpose()));
    EXPECT_TRUE(a.diagonal().isZero());
  }
}

TEST(ContactGraph, VertexAttributesCarried) {
  std::vector<Vec3> p {{0, 0, 0}, {5, 0, 0}};
  auto attrs = attrs_for(2);
  auto cg = build_contact_graph(p, attrs);
  EXPECT_EQ(cg.graph.vertex_attrs()[1], attrs[1]);
}

TEST(LabeledGraphTest, RejectsInvalidEdges) {
  EXPECT_THROW(LabeledGraph(attrs_for(2), {{0, 0, 5.0}}), DataError);
  EXPECT_THROW(LabeledGraph(attrs_for(2), {{0, 2, 5.0}}), DataError);
  EXPECT_THROW(LabeledGraph(attrs_for(2), {{0, 1, 5.0}, {1, 0, 5.0}}), DataError);
  EXPECT_THROW(LabeledGraph(attrs_for(2), {{0, 1, 0.0}}), DataError);
}

TEST(Transition, PathGraph) {
  auto tv = transition_view(fixture::path_graph(3), EdgeWeighting::Unweighted);
  EXPECT_DOUBLE_EQ(tv.stationary(0), 0.25);
  EXPECT_DOUBLE_EQ(tv.stationary(1), 0.5);
  EXPECT_DOUBLE_EQ(tv.stationary(2), 0.25);
}

TEST(Transition, RegularGraphUniform) {
  auto tv = transition_view(fixture::regular_graph(10, 3), EdgeWeighting::Unweighted);
  for (int i = 0; i < 10; ++i) EXPECT_DOUBLE_EQ(tv.stationary(i), 0.1);
}

TEST(Transition, FixedPointAndRowStochastic) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    auto g = fixture::random_connected_graph(5 + t, 0.1, rng);
    for (auto w : {EdgeWeighting::Unweighted, EdgeWeighting::Distance,
                   EdgeWeighting::InverseDistance}) {
      auto tv = transition_view(g, w);
      EXPECT_LT((tv.stationary.transpose() * tv.transition - tv.stationary.transpose())
                    .cwiseAbs()
                    .maxCoeff(),
                1e-10);
      for (int i = 0; i < g.vertex_count(); ++i) {
        EXPECT_NEAR(tv.transition.row(i).sum(), 1.0, 1e-12);
      }
      EXPECT_NEAR(tv.stationary.sum(), 1.0, 1e-12);
    }
    auto tv = transition_view(g, EdgeWeighting::Unweighted);
    for (int i = 0; i < g.vertex_count(); ++i) {
      EXPECT_EQ(tv.stationary(i), double(g.degree(i)) / (2.0 * g.edge_count()));
    }
  }
}

TEST(Transition, Errors) {
  auto isolated = fixture::make_graph(3, {{0, 1}});
  try {
    transition_view(isolated, EdgeWeighting::Unweighted);
    FAIL();
  } catch (const NumericError &e) {
    EXPECT_NE(std::string(e.what()).find("transition undefined for isolated vertex"),
              std::string::npos);
  }
  EXPECT_THROW(transition_view(fixture::make_graph(2, {}), EdgeWeighting::Unweighted),
               NumericError);
}

TEST(Seriation, StarHubFirstLeavesInIndexOrder) {
  auto s = seriate(fixture::star_graph(4), EdgeWeighting::Unweighted);
  EXPECT_EQ(s.order, (std::vector<int> {0, 1, 2, 3, 4}));
  auto moved = fixture::make_graph(5, {{2, 0}, {2, 1}, {2, 3}, {2, 4}});
  EXPECT_EQ(seriate(moved, EdgeWeighting::Unweighted).order, (std::vector<int> {2, 0, 1, 3, 4}));
}

TEST(Seriation, RegularGraphKeepsIndexOrder) {
  for (int n : {6, 9, 12}) {
    auto s = seriate(fixture::regular_graph(n, 4), EdgeWeighting::Unweighted);
    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    EXPECT_EQ(s.order, identity);
    EXPECT_FALSE(s.disconnected);
  }
}

TEST(Seriation, MatchesPowerIterationOrder) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    auto g = fixture::random_connected_graph(5 + t % 26, 0.15, rng);
    auto s = seriate(g, EdgeWeighting::Distance);
    auto pi = oracle::stationary_by_power_iteration(weighted_transition(g));
    EXPECT_EQ(s.order, order_by(pi));
    ASSERT_EQ(s.sequence.size(), std::size_t(g.vertex_count()));
    for (std::size_t i = 0; i < s.order.size(); ++i) {
      EXPECT_EQ(s.sequence[i], g.vertex_attrs()[s.order[i]]);
    }
  }
}

TEST(Seriation, RelabelingInvariance) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 30; ++t) {
    auto g = fixture::random_connected_graph(4 + t % 27, 0.2, rng);
    std::vector<int> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto a = seriate(g), b = seriate(g.permuted(perm));
    EXPECT_EQ(a.sequence, b.sequence);
  }
}

TEST(Seriation, DisconnectedComponentsBySize) {
  // Triangle {3, 4, 5} is larger than the edge {0, 1}; vertex 2 is isolated.
  auto g = fixture::make_graph(6, {{0, 1}, {3, 4}, {4, 5}, {3, 5}});
  auto s = seriate(g, EdgeWeighting::Unweighted);
  EXPECT_TRUE(s.disconnected);
  EXPECT_EQ(s.component_count, 3);
  EXPECT_EQ(s.order, (std::vector<int> {3, 4, 5, 0, 1, 2}));
}

TEST(GraphJson, RoundTrip) {
  std::mt19937_64 rng(25);
  auto g = fixture::random_connected_graph(12, 0.3, rng);
  auto j = graph_to_json(g, {{"source", "synthetic"}, {"r_min", 4}});
  auto back = graph_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.vertex_attrs(), g.vertex_attrs());
  ASSERT_EQ(back.edge_count(), g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    EXPECT_EQ(back.edges()[i].u, g.edges()[i].u);
    EXPECT_EQ(back.edges()[i].length, g.edges()[i].length);
  }
  EXPECT_EQ(j["provenance"]["source"], "synthetic");
  EXPECT_THROW(graph_from_json(nlohmann::json {{"n", 2}}), DataError);
}
