//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/graph.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "protfold/error.h"

namespace protfold {

LabeledGraph::LabeledGraph(std::vector<Vec3> vertex_attrs, std::vector<Edge> edges)
    : attrs_(std::move(vertex_attrs)), edges_(std::move(edges)), adj_(attrs_.size()) {
  const int n = vertex_count();
  std::set<std::pair<int, int>> seen;
  for (auto &e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw DataError(fmt::format("edge ({}, {}) out of range for {} vertices", e.u, e.v, n));
    }
    if (e.u == e.v) throw DataError(fmt::format("self loop on vertex {}", e.u));
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw DataError(fmt::format("edge ({}, {}) has non-positive length", e.u, e.v));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(e.u, e.v).second) {
      throw DataError(fmt::format("duplicate edge ({}, {})", e.u, e.v));
    }
    adj_[e.u].push_back({e.v, e.length});
    adj_[e.v].push_back({e.u, e.length});
  }
}

double edge_weight(double length, EdgeWeighting weighting) {
  switch (weighting) {
  case EdgeWeighting::Unweighted:
    return 1.0;
  case EdgeWeighting::Distance:
    return length;
  case EdgeWeighting::InverseDistance:
    return 1.0 / length;
  }
  return 1.0;
}

double LabeledGraph::weighted_degree(int v, EdgeWeighting weighting) const {
  double sum = 0.0;
  for (const auto &nb : adj_[v]) sum += edge_weight(nb.length, weighting);
  return sum;
}

Eigen::MatrixXd LabeledGraph::adjacency() const {
  return weights(EdgeWeighting::Unweighted);
}

Eigen::MatrixXd LabeledGraph::weights(EdgeWeighting weighting) const {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(vertex_count(), vertex_count());
  for (const auto &e : edges_) {
    w(e.u, e.v) = w(e.v, e.u) = edge_weight(e.length, weighting);
  }
  return w;
}

std::vector<std::vector<int>> LabeledGraph::components() const {
  const int n = vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members {s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const auto &nb : adj_[members[head]]) {
        if (comp[nb.vertex] < 0) {
          comp[nb.vertex] = comp[s];
          members.push_back(nb.vertex);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

LabeledGraph LabeledGraph::permuted(std::span<const int> perm) const {
  const int n = vertex_count();
  if (static_cast<int>(perm.size()) != n) throw DataError("permutation size mismatch");
  std::vector<Vec3> attrs(n);
  for (int v = 0; v < n; ++v) attrs[perm[v]] = attrs_[v];
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto &e : edges_) edges.push_back({perm[e.u], perm[e.v], e.length});
  return {std::move(attrs), std::move(edges)};
}

ContactGraph build_contact_graph(std::span<const Vec3> positions,
                                 std::span<const Vec3> vertex_attrs, double r_min,
                                 double r_max) {
  if (positions.size() < 2) {
    throw DataError("contact graph needs at least 2 residues");
  }
  if (positions.size() != vertex_attrs.size()) {
    throw DataError(fmt::format("{} positions but {} vertex attribute rows",
                                positions.size(), vertex_attrs.size()));
  }
  if (!(r_min >= 0.0) || !(r_max > r_min)) {
    throw ConfigError(fmt::format("invalid contact window ({}, {})", r_min, r_max));
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!positions[i].allFinite()) {
      throw DataError(fmt::format("non-finite coordinate for residue {}", i));
    }
  }

  std::vector<Edge> edges;
  const int n = static_cast<int>(positions.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = (positions[i] - positions[j]).norm();
      if (d > r_min && d < r_max) edges.push_back({i, j, d});
    }
  }
  ContactGraph out {
      LabeledGraph(std::vector<Vec3>(vertex_attrs.begin(), vertex_attrs.end()),
                   std::move(edges)),
      false};
  out.no_edges = out.graph.edge_count() == 0;
  return out;
}

TransitionView transition_view(const LabeledGraph &g, EdgeWeighting weighting) {
  if (g.edge_count() == 0) throw NumericError("transition undefined for a graph without edges");
  const int n = g.vertex_count();
  Eigen::MatrixXd w = g.weights(weighting);
  TransitionView view;
  view.degree = w.rowwise().sum();
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 0) {
      throw NumericError(fmt::format("transition undefined for isolated vertex {}", v));
    }
  }
  view.transition = view.degree.cwiseInverse().asDiagonal() * w;
  view.stationary = view.degree / view.degree.sum();
  return view;
}

Eigen::VectorXd degree_distribution(const LabeledGraph &g) {
  if (g.edge_count() == 0) throw NumericError("stationary distribution undefined without edges");
  Eigen::VectorXd pi(g.vertex_count());
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  for (int v = 0; v < g.vertex_count(); ++v) pi[v] = g.degree(v) / two_m;
  return pi;
}

namespace {

// Emission order of one connected component (members ascending).
std::vector<int> seriate_component(const LabeledGraph &g, const std::vector<int> &members,
                                   EdgeWeighting weighting) {
  const auto m = static_cast<Eigen::Index>(members.size());
  if (m == 1) return members;

  std::vector<int> local(g.vertex_count(), -1);
  for (Eigen::Index k = 0; k < m; ++k) local[members[k]] = static_cast<int>(k);

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (const auto &nb : g.neighbors(members[k])) {
      w(k, local[nb.vertex]) = edge_weight(nb.length, weighting);
    }
  }
  Eigen::VectorXd d = w.rowwise().sum();
  Eigen::VectorXd d_isqrt = d.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd sym = d_isqrt.asDiagonal() * w * d_isqrt.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericError("seriation eigensolver failed");
  // Eigenvalues ascend; the top one is 1 for a connected component.
  Eigen::VectorXd u = solver.eigenvectors().col(m - 1);
  if (u.sum() < 0.0) u = -u;
  Eigen::VectorXd v = d.cwiseSqrt().cwiseProduct(u);
  v = v.cwiseMax(0.0);
  const double vmax = v.maxCoeff();

  // Quantized keys make analytically equal entries compare equal despite
  // eigensolver round-off, so the index tie rule applies to them.
  std::vector<long long> key(m);
  for (Eigen::Index k = 0; k < m; ++k) key[k] = std::llround(v[k] / vmax * 1e9);

  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key[a] > key[b]; });
  std::vector<int> order(m);
  for (Eigen::Index k = 0; k < m; ++k) order[k] = members[idx[k]];
  return order;
}

}  // namespace

Seriation seriate(const LabeledGraph &g, EdgeWeighting weighting) {
  if (g.vertex_count() == 0) throw DataError("cannot seriate an empty graph");
  auto comps = g.components();
  std::stable_sort(comps.begin(), comps.end(),
                   [](const auto &a, const auto &b) { return a.size() > b.size(); });

  Seriation out;
  out.component_count = static_cast<int>(comps.size());
  out.disconnected = comps.size() > 1;
  for (const auto &c : comps) {
    auto part = seriate_component(g, c, weighting);
    out.order.insert(out.order.end(), part.begin(), part.end());
  }
  out.sequence.reserve(out.order.size());
  for (int v : out.order) out.sequence.push_back(g.vertex_attrs()[v]);
  return out;
}

nlohmann::json graph_to_json(const LabeledGraph &g, const nlohmann::json &provenance) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const auto &a : g.vertex_attrs()) attrs.push_back({a[0], a[1], a[2]});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto &e : g.edges()) edges.push_back({e.u, e.v, e.length});
  return {{"n", g.vertex_count()},
          {"vertex_attrs", std::move(attrs)},
          {"edges", std::move(edges)},
          {"provenance", provenance}};
}

LabeledGraph graph_from_json(const nlohmann::json &j) {
  try {
    const int n = j.at("n").get<int>();
    const auto &attrs_j = j.at("vertex_attrs");
    if (static_cast<int>(attrs_j.size()) != n) {
      throw DataError(fmt::format("graph json: n = {} but {} attribute rows", n,
                                  attrs_j.size()));
    }
    std::vector<Vec3> attrs;
    attrs.reserve(n);
    for (const auto &row : attrs_j) {
      if (row.size() != 3) throw DataError("graph json: vertex attribute rows need 3 values");
      attrs.emplace_back(row[0].get<double>(), row[1].get<double>(), row[2].get<double>());
    }
    std::vector<Edge> edges;
    for (const auto &e : j.at("edges")) {
      if (e.size() != 3) throw DataError("graph json: edges are [i, j, w] triples");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    return {std::move(attrs), std::move(edges)};
  } catch (const nlohmann::json::exception &ex) {
    throw DataError(fmt::format("graph json: {}", ex.what()));
  }
}

}  // namespace protfold
