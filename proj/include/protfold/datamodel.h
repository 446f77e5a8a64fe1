//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROTFOLD_DATAMODEL_H_
#define PROTFOLD_DATAMODEL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "protfold/graph.h"
#include "protfold/types.h"

namespace protfold {

enum class SolubilityClass { Soluble, Insoluble, Excluded };

// Closed intervals: [0, 0.3] is insoluble, [0.7, 1] is soluble.
inline constexpr double kInsolubleUpper = 0.3;
inline constexpr double kSolubleLower = 0.7;

SolubilityClass classify_solubility(double normalized);
std::string_view to_string(SolubilityClass label) noexcept;
SolubilityClass parse_class(std::string_view text);

// +1 for Soluble, -1 for Insoluble; throws for Excluded.
int class_sign(SolubilityClass label);

struct SolubilityRecord {
  std::string protein_id;
  double solubility;  // raw / max(raw)
  SolubilityClass label;
};

using RawSolubility = std::pair<std::string, double>;

std::vector<SolubilityRecord> normalize_solubility(std::span<const RawSolubility> raw);

// CSV with header "protein_id,solubility".
std::vector<RawSolubility> read_solubility_csv(std::istream &in);
void write_solubility_csv(std::ostream &out, std::span<const RawSolubility> rows);

struct ResidueSequence {
  std::string protein_id;
  std::string residues;  // upper-case letters of kAlphabet
};

enum class NonstandardPolicy { Drop, Map };

struct FastaOptions {
  NonstandardPolicy policy = NonstandardPolicy::Drop;
  std::map<char, char> substitutions;  // used with NonstandardPolicy::Map
};

struct FastaResult {
  std::vector<ResidueSequence> sequences;
  std::vector<std::string> warnings;
};

FastaResult read_fasta(std::istream &in, const FastaOptions &options = {});
void write_fasta(std::ostream &out, std::span<const ResidueSequence> sequences,
                 std::size_t line_width = 60);

struct CoordinateSet {
  std::string protein_id;
  std::vector<Vec3> positions;  // one CA per residue, chain order
  std::string residues;         // one-letter codes; 'X' for nonstandard names
};

/// Extracts one alpha carbon per residue from fixed-column PDB ATOM records.
/// Only the first MODEL is read; among alternate locations the
/// lexicographically smallest indicator wins.
CoordinateSet parse_coordinates(std::string_view pdb_text, std::string protein_id = {});

/// 20 x d descriptor table, rows in kAlphabet order.
struct ChemPhysTable {
  std::vector<std::string> descriptor_names;
  Eigen::MatrixXd values;
};

ChemPhysTable read_descriptor_csv(std::istream &in);

struct ComponentScores {
  Eigen::MatrixXd scores;              // 20 x k
  Eigen::VectorXd explained_fraction;  // k
};

// PCA of the column-standardized table.
ComponentScores chemphys_components(const ChemPhysTable &table, int k);

// Per-residue score rows, CSV "residue,c1,c2,c3" in any residue order.
Eigen::MatrixXd read_scores_csv(std::istream &in);
void write_scores_csv(std::ostream &out, const Eigen::MatrixXd &scores);

struct LabeledSequence {
  std::string protein_id;
  std::string residues;
  SolubilityClass label;
};

struct GraphEntry {
  std::string protein_id;
  LabeledGraph graph;
  SolubilityClass label;
};

struct SeriatedEntry {
  std::string protein_id;
  VectorSequence sequence;
  SolubilityClass label;
  bool disconnected = false;
};

struct AssemblyOptions {
  double r_min = 4.0;
  double r_max = 8.0;
  EdgeWeighting seriation_weighting = EdgeWeighting::Distance;
};

/// The parallel representations of one labeled protein set.
struct Datasets {
  std::vector<LabeledSequence> sequences;  // every labeled sequence
  std::vector<GraphEntry> graphs;          // labeled proteins with coordinates
  std::vector<SeriatedEntry> seriated;     // seriations of `graphs`, same order
  std::vector<std::string> warnings;

  // Sequences of the proteins that have graphs, in `graphs` order.
  std::vector<LabeledSequence> graph_sequences() const;
};

/// Joins labels, sequences and coordinates by protein id. Excluded-class
/// records are dropped. `scores` is the 20 x 3 per-residue attribute table.
Datasets assemble_datasets(std::span<const SolubilityRecord> records,
                           std::span<const ResidueSequence> sequences,
                           std::span<const CoordinateSet> coordinates,
                           const Eigen::MatrixXd &scores,
                           const AssemblyOptions &options = {});

struct ClassCounts {
  std::size_t soluble = 0;
  std::size_t insoluble = 0;
};

struct DatasetSplit {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  ClassCounts train_counts;
  ClassCounts test_counts;
};

using LabeledId = std::pair<std::string, SolubilityClass>;

// Stratified: round(train_fraction * class size) of each class goes to train.
DatasetSplit split_by_fraction(std::span<const LabeledId> items, double train_fraction,
                               std::uint64_t seed);
// Stratified with explicit per-class test counts.
DatasetSplit split_by_test_counts(std::span<const LabeledId> items, ClassCounts test_counts,
                                  std::uint64_t seed);
DatasetSplit split_explicit(std::span<const LabeledId> items,
                            std::span<const std::string> test_ids);

nlohmann::json split_to_json(const DatasetSplit &split);

nlohmann::json dataset_manifest(std::span<const LabeledId> items, const DatasetSplit &split,
                                const std::map<std::string, std::string> &input_hashes);

}  // namespace protfold

#endif  // PROTFOLD_DATAMODEL_H_
