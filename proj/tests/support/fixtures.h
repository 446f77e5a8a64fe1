//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Graph generators, temporary directories and a synthetic on-disk corpus
// shared by the unit and acceptance tests.
//

#ifndef PROTFOLD_TESTS_FIXTURES_H_
#define PROTFOLD_TESTS_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "protfold/config.h"
#include "protfold/graph.h"

namespace fixture {

using EdgeList = std::vector<std::pair<int, int>>;

protfold::LabeledGraph make_graph(int n, const EdgeList &edges, double length = 5.0);
protfold::LabeledGraph complete_graph(int n);
protfold::LabeledGraph cycle_graph(int n);
protfold::LabeledGraph path_graph(int n);
protfold::LabeledGraph star_graph(int leaves);
// Circulant d-regular graph; needs n * d even and d < n.
protfold::LabeledGraph regular_graph(int n, int d);

// Random spanning tree plus each other pair with probability p. Lengths are
// drawn uniformly from (4, 8) so weighted degrees are tie-free.
protfold::LabeledGraph random_connected_graph(int n, double p, std::mt19937_64 &rng);
// Erdos-Renyi graph, possibly disconnected.
protfold::LabeledGraph random_graph(int n, double p, std::mt19937_64 &rng);

class TempDir {
 public:
  explicit TempDir(const std::string &tag);
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct CorpusOptions {
  int soluble = 6;
  int insoluble = 6;
  int excluded = 1;
  int with_structure_soluble = 6;   // leading soluble proteins with a PDB file
  int with_structure_insoluble = 6;
  int min_length = 18;
  int max_length = 30;
  std::uint64_t seed = 11;
};

// Writes solubility.csv, sequences.fasta, scores.csv and structures/*.pdb.
// Soluble sequences draw from ACDEG, insoluble from WYVTK, so the sequence
// classes are separable.
void write_corpus(const std::filesystem::path &dir, const CorpusOptions &options = {});

// Config pointing at a corpus written by write_corpus.
protfold::ExperimentConfig corpus_config(const std::filesystem::path &dir,
                                         protfold::Representation representation);

// One PDB ATOM line for a CA atom.
std::string ca_line(int serial, const std::string &res_name, char chain, int res_seq,
                    double x, double y, double z, char alt_loc = ' ');

}  // namespace fixture

#endif  // PROTFOLD_TESTS_FIXTURES_H_
