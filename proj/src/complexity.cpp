//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/complexity.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <unordered_map>

#include <fmt/format.h>

#include "protfold/error.h"
#include "protfold/util.h"

namespace protfold {

double renyi2_entropy(std::span<const double> pi, bool normalize) {
  if (pi.empty()) throw DataError("entropy of an empty distribution");
  double sum = 0.0, sq = 0.0;
  for (double p : pi) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DataError(fmt::format("invalid probability vector: entry {}", p));
    }
    sum += p;
    sq += p * p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DataError(fmt::format("invalid probability vector: entries sum to {}", sum));
  }
  const double h = -std::log(sq);
  if (!normalize) return h;
  if (pi.size() == 1) return 0.0;
  return std::clamp(h / std::log(static_cast<double>(pi.size())), 0.0, 1.0);
}

double graph_entropy(const LabeledGraph &g) {
  Eigen::VectorXd pi = degree_distribution(g);
  return renyi2_entropy({pi.data(), static_cast<std::size_t>(pi.size())}, true);
}

namespace {

// Renumbers block labels to 0..k-1 in order of first appearance.
std::vector<int> canonical_labels(const Partition &partition, int *block_count) {
  std::unordered_map<int, int> remap;
  std::vector<int> out(partition.size());
  for (std::size_t v = 0; v < partition.size(); ++v) {
    auto [it, inserted] = remap.try_emplace(partition[v], static_cast<int>(remap.size()));
    out[v] = it->second;
  }
  *block_count = static_cast<int>(remap.size());
  return out;
}

void check_partition(const LabeledGraph &g, const Partition &partition) {
  if (static_cast<int>(partition.size()) != g.vertex_count()) {
    throw DataError(fmt::format("partition covers {} vertices, graph has {}", partition.size(),
                                g.vertex_count()));
  }
}

double apply_tconorm(TConorm tconorm, double a, double b) {
  return tconorm == TConorm::Max ? std::max(a, b) : a + b - a * b;
}

}  // namespace

std::vector<double> fuzzify_partition(const LabeledGraph &g, const Partition &partition,
                                      TConorm tconorm) {
  check_partition(g, partition);
  int k = 0;
  const auto block = canonical_labels(partition, &k);
  const int n = g.vertex_count();

  std::vector<int> inner(n, 0), block_size(k, 0), block_max(k, 0);
  for (int v = 0; v < n; ++v) {
    for (const auto &nb : g.neighbors(v)) inner[v] += block[nb.vertex] == block[v];
    ++block_size[block[v]];
    block_max[block[v]] = std::max(block_max[block[v]], inner[v]);
  }

  std::vector<double> mu(n, 0.0);
  for (int v = 0; v < n; ++v) {
    const int b = block[v];
    const double alpha = g.degree(v) > 0 ? static_cast<double>(inner[v]) / g.degree(v) : 0.0;
    const double beta = block_size[b] == 1 || block_max[b] == 0
                            ? 1.0
                            : static_cast<double>(inner[v]) / block_max[b];
    // Every other block assigns v membership 0, the t-conorm identity.
    mu[v] = apply_tconorm(tconorm, 0.0, alpha * beta);
  }
  return mu;
}

double fuzzy_entropy(std::span<const double> membership) {
  if (membership.empty()) return 0.0;
  auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  double sum = 0.0;
  for (double m : membership) {
    if (!(m >= 0.0 && m <= 1.0)) throw DataError(fmt::format("membership {} outside [0, 1]", m));
    sum += xlogx(m) + xlogx(1.0 - m);
  }
  const double h = -sum / (static_cast<double>(membership.size()) * std::log(2.0));
  return std::clamp(h, 0.0, 1.0);
}

bool is_admissible(const LabeledGraph &g, const Partition &partition) {
  check_partition(g, partition);
  int k = 0;
  const auto block = canonical_labels(partition, &k);
  const int n = g.vertex_count();

  std::vector<int> size(k, 0), start(k, -1);
  for (int v = 0; v < n; ++v) {
    if (size[block[v]]++ == 0) start[block[v]] = v;
  }
  for (int b = 0; b < k; ++b) {
    if (size[b] == 1 && g.degree(start[b]) > 0) return false;
  }
  // Each block must be reached entirely from its first vertex.
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  for (int b = 0; b < k; ++b) {
    int reached = 0;
    stack.assign(1, start[b]);
    seen[start[b]] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++reached;
      for (const auto &nb : g.neighbors(v)) {
        if (!seen[nb.vertex] && block[nb.vertex] == b) {
          seen[nb.vertex] = 1;
          stack.push_back(nb.vertex);
        }
      }
    }
    if (reached != size[b]) return false;
  }
  return true;
}

namespace {

double partition_entropy(const LabeledGraph &g, const Partition &p, TConorm tconorm) {
  return fuzzy_entropy(fuzzify_partition(g, p, tconorm));
}

}  // namespace

AmbiguityResult ambiguity_exhaustive(const LabeledGraph &g, TConorm tconorm) {
  const int n = g.vertex_count();
  if (n == 0) throw DataError("ambiguity of an empty graph");
  if (n > 14) throw ConfigError(fmt::format("exhaustive partition search refused for n = {}", n));

  AmbiguityResult best;
  best.exhaustive = true;
  best.value = 2.0;

  // Restricted growth strings enumerate each set partition exactly once.
  Partition p(n, 0);
  std::vector<int> max_before(n, 0);
  while (true) {
    if (is_admissible(g, p)) {
      ++best.evaluations;
      const double h = partition_entropy(g, p, tconorm);
      if (h < best.value) {
        best.value = h;
        best.partition = p;
      }
    }
    int i = n - 1;
    while (i > 0 && p[i] > max_before[i]) --i;
    if (i == 0) break;
    ++p[i];
    for (int j = i + 1; j < n; ++j) {
      p[j] = 0;
      max_before[j] = std::max(max_before[j - 1], p[j - 1]);
    }
  }
  return best;
}

namespace {

class PartitionSearch {
 public:
  PartitionSearch(const LabeledGraph &g, const AmbiguityOptions &options)
      : g_(g), options_(options), rng_(options.seed) {
    best_.value = 2.0;
    max_attempts_ = 10 * std::max<std::size_t>(options.search_budget, 1);
  }

  bool exhausted() const {
    return best_.evaluations >= options_.search_budget || attempts_ >= max_attempts_;
  }

  // Entropy of an admissible partition, or a value > 1 when inadmissible.
  // Repeated partitions are answered from a memo and do not consume budget.
  double evaluate(const Partition &p) {
    ++attempts_;
    int blocks = 0;
    const auto canonical = canonical_labels(p, &blocks);
    auto [it, inserted] = seen_.try_emplace(
        std::string(reinterpret_cast<const char *>(canonical.data()),
                    canonical.size() * sizeof(int)),
        2.0);
    if (!inserted) return it->second;
    if (!is_admissible(g_, p)) return 2.0;
    ++best_.evaluations;
    double h = partition_entropy(g_, p, options_.tconorm);
    it->second = h;
    if (h < best_.value) {
      best_.value = h;
      best_.partition = p;
    }
    return h;
  }

  Partition components_partition() const {
    Partition p(g_.vertex_count(), 0);
    auto comps = g_.components();
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (int v : comps[c]) p[v] = static_cast<int>(c);
    }
    return p;
  }

  // Greedy modularity agglomeration from singletons; admissible stages are
  // evaluated and the best one returned.
  Partition agglomerate() {
    const int n = g_.vertex_count();
    const double two_m = 2.0 * static_cast<double>(g_.edge_count());
    Partition p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<double> a(n);
    for (int v = 0; v < n; ++v) a[v] = g_.degree(v) / two_m;
    std::map<std::pair<int, int>, double> e;  // inter-block edge fraction
    for (const auto &edge : g_.edges()) e[{edge.u, edge.v}] += 1.0 / two_m;

    Partition best = components_partition();
    double best_h = evaluate(best);
    const std::size_t cap = std::max<std::size_t>(options_.search_budget / 4, 1);
    std::size_t used = 0;
    while (!e.empty() && used < cap && !exhausted()) {
      auto pick = e.begin();
      double gain = -1e300;
      for (auto it = e.begin(); it != e.end(); ++it) {
        double dq = 2.0 * (it->second / 2.0 - a[it->first.first] * a[it->first.second]);
        if (dq > gain) {
          gain = dq;
          pick = it;
        }
      }
      const auto [keep, gone] = pick->first;
      for (auto &label : p) {
        if (label == gone) label = keep;
      }
      a[keep] += a[gone];
      std::map<std::pair<int, int>, double> next;
      for (const auto &[key, w] : e) {
        int x = key.first == gone ? keep : key.first;
        int y = key.second == gone ? keep : key.second;
        if (x == y) continue;
        next[{std::min(x, y), std::max(x, y)}] += w;
      }
      e = std::move(next);
      if (is_admissible(g_, p)) {
        ++used;
        double h = evaluate(p);
        if (h < best_h) {
          best_h = h;
          best = p;
        }
      }
    }
    return best;
  }

  // Random connected blocks grown from random seeds; stray singletons are
  // merged into a neighbouring block.
  Partition random_partition() {
    const int n = g_.vertex_count();
    std::uniform_int_distribution<int> count_dist(1, std::max(1, n / 2));
    const int k = count_dist(rng_);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng_);

    Partition p(n, -1);
    std::vector<int> frontier;
    for (int b = 0; b < k && b < n; ++b) {
      p[order[b]] = b;
      frontier.push_back(order[b]);
    }
    while (!frontier.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
      std::size_t idx = pick(rng_);
      int v = frontier[idx];
      std::vector<int> open;
      for (const auto &nb : g_.neighbors(v)) {
        if (p[nb.vertex] < 0) open.push_back(nb.vertex);
      }
      if (open.empty()) {
        frontier[idx] = frontier.back();
        frontier.pop_back();
        continue;
      }
      std::uniform_int_distribution<std::size_t> pick_nb(0, open.size() - 1);
      int u = open[pick_nb(rng_)];
      p[u] = p[v];
      frontier.push_back(u);
    }
    // Vertices in components without a seed each start their own block.
    int next_label = k;
    for (int v = 0; v < n; ++v) {
      if (p[v] >= 0) continue;
      p[v] = next_label;
      std::vector<int> stack {v};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto &nb : g_.neighbors(x)) {
          if (p[nb.vertex] < 0) {
            p[nb.vertex] = next_label;
            stack.push_back(nb.vertex);
          }
        }
      }
      ++next_label;
    }
    repair_singletons(p);
    return p;
  }

  // First-improvement descent over vertex moves, edge extractions and block
  // merges.
  void local_search(Partition p) {
    double current = evaluate(p);
    if (current > 1.0) return;
    const int n = g_.vertex_count();
    bool improved = true;
    while (improved && !exhausted()) {
      improved = false;
      std::vector<Partition> moves;
      int fresh = *std::max_element(p.begin(), p.end()) + 1;
      for (int v = 0; v < n; ++v) {
        for (const auto &nb : g_.neighbors(v)) {
          if (p[nb.vertex] != p[v]) {
            Partition q = p;
            q[v] = p[nb.vertex];
            moves.push_back(std::move(q));
            if (v < nb.vertex) {
              Partition r = p;
              r[v] = r[nb.vertex] = fresh;
              moves.push_back(std::move(r));
            }
          } else if (v < nb.vertex) {
            Partition q = p;
            q[v] = q[nb.vertex] = fresh;
            moves.push_back(std::move(q));
          }
        }
      }
      std::set<std::pair<int, int>> merged;
      for (const auto &edge : g_.edges()) {
        const int a = std::min(p[edge.u], p[edge.v]), b = std::max(p[edge.u], p[edge.v]);
        if (a == b || !merged.insert({a, b}).second) continue;
        Partition q = p;
        std::replace(q.begin(), q.end(), b, a);
        moves.push_back(std::move(q));
      }
      std::shuffle(moves.begin(), moves.end(), rng_);
      for (auto &q : moves) {
        if (exhausted()) break;
        double h = evaluate(q);
        if (h < current - 1e-15) {
          current = h;
          p = std::move(q);
          improved = true;
          break;
        }
      }
    }
  }

  // A few random edge moves applied to the incumbent, then made admissible.
  Partition perturb() {
    Partition p = best_.partition;
    const auto &edges = g_.edges();
    std::uniform_int_distribution<std::size_t> pick_edge(0, edges.size() - 1);
    std::uniform_int_distribution<int> steps(1, 3);
    std::bernoulli_distribution coin(0.5);
    const int k = steps(rng_);
    for (int s = 0; s < k; ++s) {
      const auto &e = edges[pick_edge(rng_)];
      if (coin(rng_)) {
        p[e.u] = p[e.v];
      } else {
        const int fresh = *std::max_element(p.begin(), p.end()) + 1;
        p[e.u] = p[e.v] = fresh;
      }
    }
    split_disconnected_blocks(p);
    repair_singletons(p);
    split_disconnected_blocks(p);
    return p;
  }

  // Re-partitions a small region of the incumbent exactly. A membership
  // depends only on the vertex's own block, so the entropy is a sum of
  // per-block terms and the region is solved by a recursion over subsets.
  Partition reoptimize_region(Partition p) {
    const auto region = pick_region(p);
    const int r = static_cast<int>(region.size());
    if (r < 2) return p;
    std::vector<int> local(g_.vertex_count(), -1);
    for (int i = 0; i < r; ++i) local[region[i]] = i;
    std::vector<unsigned> adj(r, 0);
    for (int i = 0; i < r; ++i) {
      for (const auto &nb : g_.neighbors(region[i])) {
        if (local[nb.vertex] >= 0) adj[i] |= 1u << local[nb.vertex];
      }
    }

    const unsigned full = (1u << r) - 1;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(full + 1, inf);
    for (unsigned mask = 1; mask <= full; ++mask) cost[mask] = block_cost(region, adj, mask);
    std::vector<double> best(full + 1, inf);
    std::vector<unsigned> choice(full + 1, 0);
    best[0] = 0.0;
    for (unsigned set = 1; set <= full; ++set) {
      const unsigned low = set & (~set + 1);
      const unsigned rest = set ^ low;
      // Enumerate blocks that contain the lowest member of the set.
      for (unsigned sub = rest;; sub = (sub - 1) & rest) {
        const unsigned block = sub | low;
        const double c = cost[block] + best[set ^ block];
        if (c < best[set]) {
          best[set] = c;
          choice[set] = block;
        }
        if (sub == 0) break;
      }
    }
    if (!std::isfinite(best[full])) return p;
    int label = *std::max_element(p.begin(), p.end()) + 1;
    for (unsigned set = full; set != 0; set ^= choice[set], ++label) {
      for (int i = 0; i < r; ++i) {
        if (choice[set] >> i & 1u) p[region[i]] = label;
      }
    }
    split_disconnected_blocks(p);
    repair_singletons(p);
    return p;
  }

  // Region re-optimization until it stalls, then the single-move descent.
  void explore(Partition p) {
    double current = evaluate(p);
    if (current > 1.0) return;
    for (int stalls = 0; stalls < kRegionStalls && !exhausted();) {
      Partition q = reoptimize_region(p);
      const double h = evaluate(q);
      if (h < current - 1e-15) {
        current = h;
        p = std::move(q);
        stalls = 0;
      } else {
        ++stalls;
      }
    }
    local_search(std::move(p));
  }

  AmbiguityResult run() {
    explore(components_partition());
    if (!exhausted()) explore(agglomerate());
    for (unsigned round = 0; !exhausted() && best_.value > 0.0; ++round) {
      if (g_.edge_count() == 0) break;
      explore(round % 2 == 0 ? perturb() : random_partition());
    }
    return best_;
  }

 private:
  static constexpr int kRegionLimit = 8;
  static constexpr int kRegionStalls = 12;

  // Whole blocks adjacent to a random seed block, as long as they fit; an
  // oversized seed block contributes a connected ball instead.
  std::vector<int> pick_region(const Partition &p) {
    const int n = g_.vertex_count();
    std::vector<int> candidates;
    for (int v = 0; v < n; ++v) {
      if (g_.degree(v) > 0) candidates.push_back(v);
    }
    if (candidates.empty()) return {};
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const int seed = candidates[pick(rng_)];

    std::map<int, std::vector<int>> members;
    for (int v = 0; v < n; ++v) members[p[v]].push_back(v);
    std::vector<int> region;
    std::vector<char> in_region(n, 0);
    if (static_cast<int>(members[p[seed]].size()) > kRegionLimit) {
      std::vector<int> queue {seed};
      in_region[seed] = 1;
      for (std::size_t head = 0; head < queue.size() && region.size() < kRegionLimit; ++head) {
        region.push_back(queue[head]);
        for (const auto &nb : g_.neighbors(queue[head])) {
          if (!in_region[nb.vertex] && p[nb.vertex] == p[seed]) {
            in_region[nb.vertex] = 1;
            queue.push_back(nb.vertex);
          }
        }
      }
      return region;
    }

    std::set<int> taken {p[seed]};
    region = members[p[seed]];
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> adjacent;
      for (int v : region) {
        for (const auto &nb : g_.neighbors(v)) {
          if (!taken.count(p[nb.vertex])) adjacent.push_back(p[nb.vertex]);
        }
      }
      std::shuffle(adjacent.begin(), adjacent.end(), rng_);
      for (int b : adjacent) {
        if (taken.count(b)) continue;
        if (region.size() + members[b].size() > kRegionLimit) continue;
        taken.insert(b);
        region.insert(region.end(), members[b].begin(), members[b].end());
        grew = true;
        break;
      }
    }
    return region;
  }

  // Entropy contribution of one candidate block, infinite when the block
  // would be inadmissible.
  double block_cost(const std::vector<int> &region, const std::vector<unsigned> &adj,
                    unsigned mask) const {
    const int size = std::popcount(mask);
    if (size == 1) return g_.degree(region[std::countr_zero(mask)]) == 0 ? 0.0
                              : std::numeric_limits<double>::infinity();
    const unsigned first = mask & (~mask + 1);
    unsigned reached = first, frontier = first;
    while (frontier != 0) {
      unsigned next = 0;
      for (unsigned f = frontier; f != 0; f &= f - 1) next |= adj[std::countr_zero(f)];
      next &= mask & ~reached;
      reached |= next;
      frontier = next;
    }
    if (reached != mask) return std::numeric_limits<double>::infinity();

    int max_inner = 0;
    for (unsigned m = mask; m != 0; m &= m - 1) {
      max_inner = std::max(max_inner, std::popcount(adj[std::countr_zero(m)] & mask));
    }
    auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
    double total = 0.0;
    for (unsigned m = mask; m != 0; m &= m - 1) {
      const int i = std::countr_zero(m);
      const int inner = std::popcount(adj[i] & mask);
      const double alpha = static_cast<double>(inner) / g_.degree(region[i]);
      const double beta = max_inner == 0 ? 1.0 : static_cast<double>(inner) / max_inner;
      const double mu = apply_tconorm(options_.tconorm, 0.0, alpha * beta);
      total -= xlogx(mu) + xlogx(1.0 - mu);
    }
    return total;
  }

  // Relabels so that every block is one connected piece.
  void split_disconnected_blocks(Partition &p) const {
    const int n = g_.vertex_count();
    Partition out(n, -1);
    int label = 0;
    for (int v = 0; v < n; ++v) {
      if (out[v] >= 0) continue;
      out[v] = label;
      std::vector<int> stack {v};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto &nb : g_.neighbors(x)) {
          if (out[nb.vertex] < 0 && p[nb.vertex] == p[x]) {
            out[nb.vertex] = label;
            stack.push_back(nb.vertex);
          }
        }
      }
      ++label;
    }
    p = std::move(out);
  }

  void repair_singletons(Partition &p) {
    const int n = g_.vertex_count();
    std::map<int, int> size;
    for (int v = 0; v < n; ++v) ++size[p[v]];
    for (int v = 0; v < n; ++v) {
      if (size[p[v]] != 1 || g_.degree(v) == 0) continue;
      const auto &nbs = g_.neighbors(v);
      std::uniform_int_distribution<std::size_t> pick(0, nbs.size() - 1);
      int target = p[nbs[pick(rng_)].vertex];
      --size[p[v]];
      p[v] = target;
      ++size[target];
    }
  }

  const LabeledGraph &g_;
  AmbiguityOptions options_;
  std::mt19937_64 rng_;
  AmbiguityResult best_;
  std::size_t attempts_ = 0;
  std::size_t max_attempts_ = 0;
  std::unordered_map<std::string, double> seen_;
};

}  // namespace

AmbiguityResult ambiguity_heuristic(const LabeledGraph &g, const AmbiguityOptions &options) {
  if (g.vertex_count() == 0) throw DataError("ambiguity of an empty graph");
  return PartitionSearch(g, options).run();
}

AmbiguityResult ambiguity(const LabeledGraph &g, const AmbiguityOptions &options) {
  if (g.vertex_count() <= options.exhaustive_limit) return ambiguity_exhaustive(g, options.tconorm);
  return ambiguity_heuristic(g, options);
}

namespace {

ClassSummary summarize(const std::vector<const ComplexityRow *> &rows) {
  ClassSummary s;
  s.count = rows.size();
  if (rows.empty()) return s;
  for (const auto *r : rows) {
    s.entropy_mean += r->entropy;
    s.ambiguity_mean += r->ambiguity;
  }
  const double n = static_cast<double>(rows.size());
  s.entropy_mean /= n;
  s.ambiguity_mean /= n;
  if (rows.size() > 1) {
    for (const auto *r : rows) {
      s.entropy_sd += (r->entropy - s.entropy_mean) * (r->entropy - s.entropy_mean);
      s.ambiguity_sd += (r->ambiguity - s.ambiguity_mean) * (r->ambiguity - s.ambiguity_mean);
    }
    s.entropy_sd = std::sqrt(s.entropy_sd / (n - 1.0));
    s.ambiguity_sd = std::sqrt(s.ambiguity_sd / (n - 1.0));
  }
  return s;
}

}  // namespace

ComplexityReport complexity_features(std::span<const GraphEntry> graphs,
                                     const AmbiguityOptions &options, int threads) {
  ComplexityReport report;
  report.rows.resize(graphs.size());
  parallel_for(graphs.size(), threads, [&](std::size_t i) {
    const auto &entry = graphs[i];
    if (entry.graph.edge_count() == 0) {
      throw DataError(fmt::format("graph '{}' has no edges; entropy undefined", entry.protein_id));
    }
    AmbiguityOptions local = options;
    local.seed = stage_seed(options.seed, entry.protein_id);
    report.rows[i] = {entry.protein_id, graph_entropy(entry.graph),
                      ambiguity(entry.graph, local).value, entry.label};
  });

  std::vector<const ComplexityRow *> sol, ins;
  for (const auto &r : report.rows) {
    if (r.label == SolubilityClass::Soluble) sol.push_back(&r);
    else if (r.label == SolubilityClass::Insoluble) ins.push_back(&r);
  }
  report.soluble = summarize(sol);
  report.insoluble = summarize(ins);
  return report;
}

void write_complexity_csv(std::ostream &out, const ComplexityReport &report) {
  out << "protein_id,entropy,ambiguity,label\n";
  for (const auto &r : report.rows) {
    out << fmt::format("{},{},{},{}\n", r.protein_id, format_real(r.entropy),
                       format_real(r.ambiguity), to_string(r.label));
  }
}

void write_complexity_summary(std::ostream &out, const ComplexityReport &report) {
  out << "class,count,entropy_mean,entropy_sd,ambiguity_mean,ambiguity_sd\n";
  for (const auto &[name, s] : {std::pair {"insoluble", &report.insoluble},
                                std::pair {"soluble", &report.soluble}}) {
    out << fmt::format("{},{},{:.4f},{:.4f},{:.4f},{:.4f}\n", name, s->count, s->entropy_mean,
                       s->entropy_sd, s->ambiguity_mean, s->ambiguity_sd);
  }
}

}  // namespace protfold
