//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/datamodel.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "protfold/alphabet.h"
#include "protfold/error.h"
#include "protfold/stats.h"
#include "protfold/util.h"

namespace protfold {
namespace {

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc {} || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

SolubilityClass classify_solubility(double normalized) {
  if (normalized <= kInsolubleUpper) return SolubilityClass::Insoluble;
  if (normalized >= kSolubleLower) return SolubilityClass::Soluble;
  return SolubilityClass::Excluded;
}

std::string_view to_string(SolubilityClass label) noexcept {
  switch (label) {
  case SolubilityClass::Soluble:
    return "soluble";
  case SolubilityClass::Insoluble:
    return "insoluble";
  case SolubilityClass::Excluded:
    return "excluded";
  }
  return "excluded";
}

SolubilityClass parse_class(std::string_view text) {
  text = trim(text);
  if (text == "soluble") return SolubilityClass::Soluble;
  if (text == "insoluble") return SolubilityClass::Insoluble;
  if (text == "excluded") return SolubilityClass::Excluded;
  throw DataError(fmt::format("unknown class label '{}'", text));
}

int class_sign(SolubilityClass label) {
  switch (label) {
  case SolubilityClass::Soluble:
    return 1;
  case SolubilityClass::Insoluble:
    return -1;
  case SolubilityClass::Excluded:
    break;
  }
  throw DataError("excluded proteins carry no class sign");
}

std::vector<SolubilityRecord> normalize_solubility(std::span<const RawSolubility> raw) {
  double max_raw = 0.0;
  for (const auto &[id, value] : raw) {
    if (!std::isfinite(value) || value < 0.0) {
      throw DataError(fmt::format("solubility of '{}' must be a finite value >= 0", id));
    }
    max_raw = std::max(max_raw, value);
  }
  if (!(max_raw > 0.0)) throw DataError("degenerate solubility table");

  std::vector<SolubilityRecord> out;
  out.reserve(raw.size());
  for (const auto &[id, value] : raw) {
    double s = value / max_raw;
    out.push_back({id, s, classify_solubility(s)});
  }
  return out;
}

std::vector<RawSolubility> read_solubility_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "protein_id,solubility") {
    throw DataError("solubility table must start with header 'protein_id,solubility'");
  }
  std::vector<RawSolubility> rows;
  std::set<std::string> seen;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (trim(line).empty()) continue;
    auto cells = split_view(line, ',');
    if (cells.size() != 2) {
      throw DataError(fmt::format("solubility table line {}: expected 2 fields", lineno));
    }
    std::string id(trim(cells[0]));
    auto value = parse_real(cells[1]);
    if (id.empty() || !value) {
      throw DataError(fmt::format("solubility table line {}: malformed record", lineno));
    }
    if (!seen.insert(id).second) {
      throw DataError(fmt::format("solubility table line {}: duplicate id '{}'", lineno, id));
    }
    rows.emplace_back(std::move(id), *value);
  }
  return rows;
}

void write_solubility_csv(std::ostream &out, std::span<const RawSolubility> rows) {
  out << "protein_id,solubility\n";
  for (const auto &[id, value] : rows) out << id << ',' << format_real(value) << '\n';
}

FastaResult read_fasta(std::istream &in, const FastaOptions &options) {
  FastaResult result;
  std::set<std::string> seen;
  std::string id, residues, line;
  bool have_record = false;

  auto flush = [&] {
    if (!have_record) return;
    while (!residues.empty() && residues.back() == '*') residues.pop_back();
    if (residues.empty()) {
      result.warnings.push_back(fmt::format("sequence '{}' is empty; dropped", id));
      return;
    }
    for (char &c : residues) {
      if (is_canonical_residue(c)) continue;
      if (options.policy == NonstandardPolicy::Map) {
        auto it = options.substitutions.find(c);
        if (it != options.substitutions.end() && is_canonical_residue(it->second)) {
          c = it->second;
          continue;
        }
      }
      result.warnings.push_back(
          fmt::format("sequence '{}' contains nonstandard residue '{}'; dropped", id, c));
      return;
    }
    if (!seen.insert(id).second) throw DataError(fmt::format("duplicate FASTA id '{}'", id));
    result.sequences.push_back({id, residues});
  };

  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto text = trim(line);
    if (text.empty() || text.front() == ';') continue;
    if (text.front() == '>') {
      flush();
      auto header = trim(text.substr(1));
      id = std::string(header.substr(0, header.find_first_of(" \t")));
      if (id.empty()) throw DataError(fmt::format("FASTA line {}: empty identifier", lineno));
      residues.clear();
      have_record = true;
      continue;
    }
    if (!have_record) {
      throw DataError(fmt::format("FASTA line {}: residues before the first header", lineno));
    }
    for (char c : text) {
      if (c == ' ' || c == '\t') continue;
      if (!std::isalpha(static_cast<unsigned char>(c)) && c != '*') {
        throw DataError(fmt::format("FASTA line {}: invalid character '{}'", lineno, c));
      }
      residues += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
  }
  flush();
  return result;
}

void write_fasta(std::ostream &out, std::span<const ResidueSequence> sequences,
                 std::size_t line_width) {
  for (const auto &seq : sequences) {
    out << '>' << seq.protein_id << '\n';
    for (std::size_t i = 0; i < seq.residues.size(); i += line_width) {
      out << seq.residues.substr(i, line_width) << '\n';
    }
  }
}

CoordinateSet parse_coordinates(std::string_view pdb_text, std::string protein_id) {
  struct ResidueSlot {
    std::string label;
    char altloc = 0;
    bool has_ca = false;
    Vec3 position;
    char code = 'X';
  };
  std::vector<ResidueSlot> slots;
  std::unordered_map<std::string, std::size_t> slot_of;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < pdb_text.size()) {
    auto eol = pdb_text.find('\n', pos);
    std::string_view line = pdb_text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
    pos = eol == std::string_view::npos ? pdb_text.size() : eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (starts_with(line, "ENDMDL")) break;
    if (!starts_with(line, "ATOM  ")) continue;
    if (line.size() < 54) {
      throw DataError(fmt::format("PDB line {}: ATOM record shorter than 54 columns", lineno));
    }

    std::string key(line.substr(21, 6));  // chain, resSeq, iCode
    auto [it, inserted] = slot_of.try_emplace(key, slots.size());
    if (inserted) {
      ResidueSlot slot;
      slot.label = fmt::format("chain '{}' residue '{}'", line[21], trim(line.substr(22, 5)));
      slots.push_back(std::move(slot));
    }
    if (trim(line.substr(12, 4)) != "CA") continue;

    auto x = parse_real(line.substr(30, 8));
    auto y = parse_real(line.substr(38, 8));
    auto z = parse_real(line.substr(46, 8));
    if (!x || !y || !z || !std::isfinite(*x) || !std::isfinite(*y) || !std::isfinite(*z)) {
      throw DataError(fmt::format("PDB line {}: malformed coordinate field", lineno));
    }
    auto &slot = slots[it->second];
    const char altloc = line[16];
    if (slot.has_ca && slot.altloc <= altloc) continue;
    slot.has_ca = true;
    slot.altloc = altloc;
    slot.position = Vec3(*x, *y, *z);
    slot.code = three_to_one(trim(line.substr(17, 3)));
  }

  if (slots.empty()) throw DataError("no CA atoms found");
  CoordinateSet out;
  out.protein_id = std::move(protein_id);
  out.positions.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].has_ca) {
      throw DataError(fmt::format("residue {} ({}) has no CA atom", i, slots[i].label));
    }
    out.positions.push_back(slots[i].position);
    out.residues += slots[i].code;
  }
  return out;
}

namespace {

// Parses a 20-row CSV keyed by one-letter code into kAlphabet row order.
Eigen::MatrixXd read_residue_table(std::istream &in, std::vector<std::string> *names,
                                   std::string_view what) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(fmt::format("{}: empty file", what));
  auto header = split_view(line, ',');
  if (header.size() < 2) throw DataError(fmt::format("{}: no value columns", what));
  const auto cols = static_cast<Eigen::Index>(header.size() - 1);
  if (names != nullptr) {
    names->clear();
    for (std::size_t c = 1; c < header.size(); ++c) names->emplace_back(trim(header[c]));
  }

  Eigen::MatrixXd values(kAlphabetSize, cols);
  std::vector<bool> filled(kAlphabetSize, false);
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (trim(line).empty()) continue;
    auto cells = split_view(line, ',');
    if (static_cast<Eigen::Index>(cells.size()) != cols + 1) {
      throw DataError(fmt::format("{} line {}: expected {} fields, found {}", what, lineno,
                                  cols + 1, cells.size()));
    }
    auto code = trim(cells[0]);
    int row = code.size() == 1 ? residue_index(code[0]) : -1;
    if (row < 0) {
      throw DataError(fmt::format("{} line {}: '{}' is not a canonical residue", what, lineno,
                                  code));
    }
    if (filled[row]) {
      throw DataError(fmt::format("{} line {}: duplicate residue '{}'", what, lineno, code));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      auto v = parse_real(cells[c + 1]);
      if (!v || !std::isfinite(*v)) {
        throw DataError(fmt::format("{} line {}: missing or invalid value in column {}", what,
                                    lineno, c + 2));
      }
      values(row, c) = *v;
    }
    filled[row] = true;
  }
  for (int r = 0; r < kAlphabetSize; ++r) {
    if (!filled[r]) {
      throw DataError(fmt::format("{}: no row for residue '{}'", what, kAlphabet[r]));
    }
  }
  return values;
}

}  // namespace

ChemPhysTable read_descriptor_csv(std::istream &in) {
  ChemPhysTable table;
  table.values = read_residue_table(in, &table.descriptor_names, "descriptor table");
  if (table.values.cols() < 3) throw DataError("descriptor table needs at least 3 columns");
  return table;
}

ComponentScores chemphys_components(const ChemPhysTable &table, int k) {
  if (k < 1 || k > kAlphabetSize) {
    throw ConfigError(fmt::format("component count {} outside [1, 20]", k));
  }
  auto result = pca(table.values, k, /*standardize=*/true);
  return {std::move(result.scores), std::move(result.explained_fraction)};
}

Eigen::MatrixXd read_scores_csv(std::istream &in) {
  return read_residue_table(in, nullptr, "score table");
}

void write_scores_csv(std::ostream &out, const Eigen::MatrixXd &scores) {
  out << "residue";
  for (Eigen::Index c = 0; c < scores.cols(); ++c) out << ",c" << c + 1;
  out << '\n';
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    out << kAlphabet[r];
    for (Eigen::Index c = 0; c < scores.cols(); ++c) out << ',' << format_real(scores(r, c));
    out << '\n';
  }
}

std::vector<LabeledSequence> Datasets::graph_sequences() const {
  std::unordered_map<std::string_view, const LabeledSequence *> by_id;
  for (const auto &s : sequences) by_id.emplace(s.protein_id, &s);
  std::vector<LabeledSequence> out;
  out.reserve(graphs.size());
  for (const auto &g : graphs) out.push_back(*by_id.at(g.protein_id));
  return out;
}

Datasets assemble_datasets(std::span<const SolubilityRecord> records,
                           std::span<const ResidueSequence> sequences,
                           std::span<const CoordinateSet> coordinates,
                           const Eigen::MatrixXd &scores, const AssemblyOptions &options) {
  Datasets out;
  std::unordered_map<std::string_view, const ResidueSequence *> seq_by_id;
  for (const auto &s : sequences) seq_by_id.emplace(s.protein_id, &s);
  std::unordered_map<std::string_view, const CoordinateSet *> coords_by_id;
  for (const auto &c : coordinates) {
    if (!seq_by_id.contains(c.protein_id)) {
      out.warnings.push_back(
          fmt::format("coordinates for '{}' have no sequence; excluded", c.protein_id));
      continue;
    }
    coords_by_id.emplace(c.protein_id, &c);
  }
  if (!coords_by_id.empty() && (scores.rows() != kAlphabetSize || scores.cols() != 3)) {
    throw DataError(fmt::format("vertex score table must be 20 x 3, got {} x {}",
                                scores.rows(), scores.cols()));
  }

  for (const auto &rec : records) {
    if (rec.label == SolubilityClass::Excluded) continue;
    auto sit = seq_by_id.find(rec.protein_id);
    if (sit == seq_by_id.end()) {
      out.warnings.push_back(fmt::format("labeled protein '{}' has no sequence; skipped",
                                         rec.protein_id));
      continue;
    }
    const auto &residues = sit->second->residues;
    out.sequences.push_back({rec.protein_id, residues, rec.label});

    auto cit = coords_by_id.find(rec.protein_id);
    if (cit == coords_by_id.end()) continue;
    const auto &coords = *cit->second;
    if (coords.positions.size() != residues.size()) {
      out.warnings.push_back(fmt::format(
          "coordinates for '{}' list {} residues but the sequence has {}; excluded",
          rec.protein_id, coords.positions.size(), residues.size()));
      continue;
    }
    std::vector<Vec3> attrs;
    attrs.reserve(residues.size());
    for (char c : residues) attrs.push_back(scores.row(residue_index(c)).transpose());

    auto built = build_contact_graph(coords.positions, attrs, options.r_min, options.r_max);
    if (built.no_edges) {
      out.warnings.push_back(fmt::format("contact graph of '{}' has no edges", rec.protein_id));
    }
    auto ser = seriate(built.graph, options.seriation_weighting);
    out.seriated.push_back(
        {rec.protein_id, std::move(ser.sequence), rec.label, ser.disconnected});
    out.graphs.push_back({rec.protein_id, std::move(built.graph), rec.label});
  }
  return out;
}

namespace {

void check_items(std::span<const LabeledId> items) {
  std::set<std::string_view> seen;
  for (const auto &[id, label] : items) {
    if (label == SolubilityClass::Excluded) {
      throw DataError(fmt::format("cannot split excluded protein '{}'", id));
    }
    if (!seen.insert(id).second) throw DataError(fmt::format("duplicate id '{}' in split", id));
  }
}

DatasetSplit assemble_split(std::span<const LabeledId> items, const std::vector<bool> &is_test) {
  DatasetSplit split;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const bool soluble = items[i].second == SolubilityClass::Soluble;
    if (is_test[i]) {
      split.test_ids.push_back(items[i].first);
      ++(soluble ? split.test_counts.soluble : split.test_counts.insoluble);
    } else {
      split.train_ids.push_back(items[i].first);
      ++(soluble ? split.train_counts.soluble : split.train_counts.insoluble);
    }
  }
  return split;
}

}  // namespace

DatasetSplit split_by_test_counts(std::span<const LabeledId> items, ClassCounts test_counts,
                                  std::uint64_t seed) {
  check_items(items);
  std::vector<std::size_t> soluble, insoluble;
  for (std::size_t i = 0; i < items.size(); ++i) {
    (items[i].second == SolubilityClass::Soluble ? soluble : insoluble).push_back(i);
  }
  if (test_counts.soluble > soluble.size() || test_counts.insoluble > insoluble.size()) {
    throw DataError(fmt::format(
        "split infeasible: requested {} soluble / {} insoluble test items from {} / {}",
        test_counts.soluble, test_counts.insoluble, soluble.size(), insoluble.size()));
  }

  std::mt19937_64 rng(seed);
  std::vector<bool> is_test(items.size(), false);
  std::shuffle(soluble.begin(), soluble.end(), rng);
  std::shuffle(insoluble.begin(), insoluble.end(), rng);
  for (std::size_t k = 0; k < test_counts.soluble; ++k) is_test[soluble[k]] = true;
  for (std::size_t k = 0; k < test_counts.insoluble; ++k) is_test[insoluble[k]] = true;
  return assemble_split(items, is_test);
}

DatasetSplit split_by_fraction(std::span<const LabeledId> items, double train_fraction,
                               std::uint64_t seed) {
  if (!(train_fraction >= 0.0 && train_fraction <= 1.0)) {
    throw ConfigError(fmt::format("train fraction {} outside [0, 1]", train_fraction));
  }
  ClassCounts sizes;
  for (const auto &[id, label] : items) {
    ++(label == SolubilityClass::Soluble ? sizes.soluble : sizes.insoluble);
  }
  auto test_part = [&](std::size_t size) {
    auto train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(size)));
    return size - std::min(train, size);
  };
  return split_by_test_counts(items, {test_part(sizes.soluble), test_part(sizes.insoluble)},
                              seed);
}

DatasetSplit split_explicit(std::span<const LabeledId> items,
                            std::span<const std::string> test_ids) {
  check_items(items);
  std::set<std::string_view> wanted(test_ids.begin(), test_ids.end());
  std::vector<bool> is_test(items.size(), false);
  std::size_t found = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (wanted.contains(items[i].first)) {
      is_test[i] = true;
      ++found;
    }
  }
  if (found != wanted.size()) {
    throw DataError(fmt::format("{} requested test ids are not in the dataset",
                                wanted.size() - found));
  }
  return assemble_split(items, is_test);
}

nlohmann::json split_to_json(const DatasetSplit &split) {
  return {{"train_ids", split.train_ids},
          {"test_ids", split.test_ids},
          {"train_counts",
           {{"soluble", split.train_counts.soluble},
            {"insoluble", split.train_counts.insoluble}}},
          {"test_counts",
           {{"soluble", split.test_counts.soluble}, {"insoluble", split.test_counts.insoluble}}}};
}

nlohmann::json dataset_manifest(std::span<const LabeledId> items, const DatasetSplit &split,
                                const std::map<std::string, std::string> &input_hashes) {
  std::set<std::string_view> test(split.test_ids.begin(), split.test_ids.end());
  nlohmann::json proteins = nlohmann::json::array();
  for (const auto &[id, label] : items) {
    proteins.push_back({{"id", id},
                        {"label", to_string(label)},
                        {"split", test.contains(id) ? "test" : "train"}});
  }
  nlohmann::json hashes = nlohmann::json::object();
  for (const auto &[path, digest] : input_hashes) hashes[path] = digest;
  return {{"proteins", std::move(proteins)},
          {"split", split_to_json(split)},
          {"inputs", std::move(hashes)}};
}

}  // namespace protfold
