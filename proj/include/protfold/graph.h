//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_GRAPH_H_
#define PROTFOLD_GRAPH_H_

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "protfold/types.h"

namespace protfold {

struct Edge {
  int u;
  int v;
  double length;  // CA-CA distance in Angstrom for contact graphs
};

struct Neighbor {
  int vertex;
  double length;
};

enum class EdgeWeighting {
  Unweighted,       // A
  Distance,         // raw edge length
  InverseDistance,  // 1 / edge length
};

/// Undirected simple graph with a 3-vector on every vertex and a positive
/// length on every edge.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  LabeledGraph(std::vector<Vec3> vertex_attrs, std::vector<Edge> edges);

  int vertex_count() const noexcept { return static_cast<int>(attrs_.size()); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<Vec3> &vertex_attrs() const noexcept { return attrs_; }
  const std::vector<Edge> &edges() const noexcept { return edges_; }
  const std::vector<Neighbor> &neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  double weighted_degree(int v, EdgeWeighting weighting) const;

  Eigen::MatrixXd adjacency() const;
  Eigen::MatrixXd weights(EdgeWeighting weighting) const;

  // Connected components, each sorted ascending, ordered by smallest member.
  std::vector<std::vector<int>> components() const;

  // Relabels vertex v as perm[v].
  LabeledGraph permuted(std::span<const int> perm) const;

 private:
  std::vector<Vec3> attrs_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adj_;
};

double edge_weight(double length, EdgeWeighting weighting);

struct ContactGraph {
  LabeledGraph graph;
  bool no_edges = false;  // warning: no pair fell inside the distance window
};

/// Connects residues i, j iff r_min < |p_i - p_j| < r_max; the edge carries
/// the distance and vertex i carries vertex_attrs[i].
ContactGraph build_contact_graph(std::span<const Vec3> positions,
                                 std::span<const Vec3> vertex_attrs,
                                 double r_min = 4.0, double r_max = 8.0);

struct TransitionView {
  Eigen::MatrixXd transition;  // D^-1 W, row-stochastic
  Eigen::VectorXd degree;      // diagonal of D
  Eigen::VectorXd stationary;  // degree / sum(degree)
};

TransitionView transition_view(const LabeledGraph &g, EdgeWeighting weighting);

// pi_i = deg(i) / 2|E| over unweighted degrees. Isolated vertices get zero
// mass; throws for a graph without edges.
Eigen::VectorXd degree_distribution(const LabeledGraph &g);

struct Seriation {
  std::vector<int> order;  // vertex indices in emission order
  VectorSequence sequence;
  int component_count = 1;
  bool disconnected = false;
};

/// Orders vertices by the leading eigenvector of D^-1/2 W D^-1/2, mapped back
/// through D^1/2 (the stationary distribution of the walk), descending, with
/// ties broken by vertex index. Disconnected graphs are seriated component by
/// component, largest component first.
Seriation seriate(const LabeledGraph &g, EdgeWeighting weighting = EdgeWeighting::Distance);

nlohmann::json graph_to_json(const LabeledGraph &g,
                             const nlohmann::json &provenance = nlohmann::json::object());
LabeledGraph graph_from_json(const nlohmann::json &j);

}  // namespace protfold

#endif  // PROTFOLD_GRAPH_H_
