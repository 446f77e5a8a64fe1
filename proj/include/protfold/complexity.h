//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_COMPLEXITY_H_
#define PROTFOLD_COMPLEXITY_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "protfold/datamodel.h"
#include "protfold/graph.h"

namespace protfold {

/// -log(sum pi_i^2), divided by log(n) when `normalize`. A one-element
/// distribution has normalized entropy 0.
double renyi2_entropy(std::span<const double> pi, bool normalize = true);

// Normalized 2-order Renyi entropy of the unweighted stationary distribution.
double graph_entropy(const LabeledGraph &g);

/// Vertex partition as a block label per vertex. Labels need not be
/// contiguous; blocks are the sets of vertices sharing a label.
using Partition = std::vector<int>;

enum class TConorm { Max, ProbabilisticSum };

/// Membership of every vertex in the fuzzified partition. For the block C
/// containing v:
///   alpha = (neighbours of v inside C) / deg(v)
///   beta  = (neighbours of v inside C) / max_{u in C} (neighbours of u in C)
/// (beta = 1 for singletons or edgeless blocks), mu_C(v) = alpha * beta, and
/// mu_C(v) = 0 for v outside C. Block memberships are joined by the t-conorm.
/// Isolated vertices get membership 0.
std::vector<double> fuzzify_partition(const LabeledGraph &g, const Partition &partition,
                                      TConorm tconorm = TConorm::Max);

// Normalized De Luca-Termini entropy, in [0, 1].
double fuzzy_entropy(std::span<const double> membership);

/// Partitions searched by ambiguity(): every block induces a connected
/// subgraph and only isolated vertices may form singleton blocks.
bool is_admissible(const LabeledGraph &g, const Partition &partition);

struct AmbiguityOptions {
  std::size_t search_budget = 2000;  // evaluated partitions, heuristic only
  int exhaustive_limit = 10;         // exact search up to this many vertices
  std::uint64_t seed = 0;
  TConorm tconorm = TConorm::Max;
};

struct AmbiguityResult {
  double value = 0.0;
  Partition partition;
  bool exhaustive = false;
  std::size_t evaluations = 0;
};

/// Minimum fuzzy entropy over admissible partitions: exact enumeration up to
/// exhaustive_limit vertices, seeded local search above.
AmbiguityResult ambiguity(const LabeledGraph &g, const AmbiguityOptions &options = {});
AmbiguityResult ambiguity_exhaustive(const LabeledGraph &g, TConorm tconorm = TConorm::Max);
AmbiguityResult ambiguity_heuristic(const LabeledGraph &g, const AmbiguityOptions &options = {});

struct ComplexityRow {
  std::string protein_id;
  double entropy;
  double ambiguity;
  SolubilityClass label;
};

struct ClassSummary {
  std::size_t count = 0;
  double entropy_mean = 0.0;
  double entropy_sd = 0.0;  // sample standard deviation
  double ambiguity_mean = 0.0;
  double ambiguity_sd = 0.0;
};

struct ComplexityReport {
  std::vector<ComplexityRow> rows;
  ClassSummary soluble;
  ClassSummary insoluble;
};

ComplexityReport complexity_features(std::span<const GraphEntry> graphs,
                                     const AmbiguityOptions &options = {}, int threads = 1);

// CSV "protein_id,entropy,ambiguity,label".
void write_complexity_csv(std::ostream &out, const ComplexityReport &report);
void write_complexity_summary(std::ostream &out, const ComplexityReport &report);

}  // namespace protfold

#endif  // PROTFOLD_COMPLEXITY_H_
