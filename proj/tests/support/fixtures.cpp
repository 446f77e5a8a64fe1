//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fixtures.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "protfold/alphabet.h"
#include "protfold/util.h"

namespace fs = std::filesystem;

namespace fixture {

namespace {

std::vector<protfold::Vec3> default_attrs(int n) {
  std::vector<protfold::Vec3> attrs;
  for (int i = 0; i < n; ++i) attrs.emplace_back(0.1 * i, 1.0, -0.5 * (i % 3));
  return attrs;
}

const char *three_letter(char one) {
  static constexpr std::pair<char, const char *> kCodes[] = {
      {'A', "ALA"}, {'C', "CYS"}, {'D', "ASP"}, {'E', "GLU"}, {'F', "PHE"},
      {'G', "GLY"}, {'H', "HIS"}, {'I', "ILE"}, {'K', "LYS"}, {'L', "LEU"},
      {'M', "MET"}, {'N', "ASN"}, {'P', "PRO"}, {'Q', "GLN"}, {'R', "ARG"},
      {'S', "SER"}, {'T', "THR"}, {'V', "VAL"}, {'W', "TRP"}, {'Y', "TYR"}};
  for (const auto &[c, name] : kCodes) {
    if (c == one) return name;
  }
  return "UNK";
}

}  // namespace

protfold::LabeledGraph make_graph(int n, const EdgeList &edges, double length) {
  std::vector<protfold::Edge> list;
  for (const auto &[u, v] : edges) list.push_back({u, v, length});
  return protfold::LabeledGraph(default_attrs(n), std::move(list));
}

protfold::LabeledGraph complete_graph(int n) {
  EdgeList e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return make_graph(n, e);
}

protfold::LabeledGraph cycle_graph(int n) {
  EdgeList e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return make_graph(n, e);
}

protfold::LabeledGraph path_graph(int n) {
  EdgeList e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e);
}

protfold::LabeledGraph star_graph(int leaves) {
  EdgeList e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return make_graph(leaves + 1, e);
}

protfold::LabeledGraph regular_graph(int n, int d) {
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int k = 1; k <= d / 2; ++k) {
      int j = (i + k) % n;
      edges.insert({std::min(i, j), std::max(i, j)});
    }
    if (d % 2 == 1) {
      int j = (i + n / 2) % n;
      edges.insert({std::min(i, j), std::max(i, j)});
    }
  }
  return make_graph(n, EdgeList(edges.begin(), edges.end()));
}

protfold::LabeledGraph random_connected_graph(int n, double p, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> length(4.05, 7.95);
  std::set<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    edges.insert({parent(rng), v});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unit(rng) < p) edges.insert({i, j});
    }
  }
  std::vector<protfold::Edge> list;
  for (const auto &[u, v] : edges) list.push_back({u, v, length(rng)});
  std::vector<protfold::Vec3> attrs;
  std::normal_distribution<double> normal;
  for (int i = 0; i < n; ++i) attrs.emplace_back(normal(rng), normal(rng), normal(rng));
  return protfold::LabeledGraph(std::move(attrs), std::move(list));
}

protfold::LabeledGraph random_graph(int n, double p, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  EdgeList edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unit(rng) < p) edges.emplace_back(i, j);
    }
  }
  return make_graph(n, edges);
}

TempDir::TempDir(const std::string &tag) {
  static std::random_device device;
  for (int attempt = 0; attempt < 100; ++attempt) {
    fs::path candidate = fs::temp_directory_path() / fmt::format("protfold-{}-{:x}", tag, device());
    if (fs::create_directories(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create a temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string ca_line(int serial, const std::string &res_name, char chain, int res_seq, double x,
                    double y, double z, char alt_loc) {
  return fmt::format("ATOM  {:5d}  CA {}{:>3} {}{:4d}    {:8.3f}{:8.3f}{:8.3f}  1.00  0.00           C\n",
                     serial, alt_loc, res_name, chain, res_seq, x, y, z);
}

void write_corpus(const fs::path &dir, const CorpusOptions &o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> length(o.min_length, o.max_length);
  const std::string soluble_alphabet = "ACDEG", insoluble_alphabet = "WYVTK";

  std::string solubility = "protein_id,solubility\n";
  std::string fasta;
  fs::create_directories(dir / "structures");

  auto emit = [&](const std::string &id, double value, const std::string &alphabet,
                  bool structure) {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    const int n = length(rng);
    std::string residues;
    for (int i = 0; i < n; ++i) residues.push_back(alphabet[pick(rng)]);
    solubility += fmt::format("{},{}\n", id, value);
    fasta += fmt::format(">{} synthetic\n{}\n", id, residues);
    if (!structure) return;
    // Compact random walk with CA-CA steps of 3.8 Angstrom.
    std::normal_distribution<double> normal;
    std::string pdb = "HEADER    SYNTHETIC\n";
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    Eigen::Vector3d heading(1.0, 0.0, 0.0);
    for (int i = 0; i < n; ++i) {
      pdb += ca_line(i + 1, three_letter(residues[i]), 'A', i + 1, p.x(), p.y(), p.z());
      Eigen::Vector3d turn(normal(rng), normal(rng), normal(rng));
      heading = (heading + 0.9 * turn).normalized();
      Eigen::Vector3d next = p + 3.8 * heading;
      if (next.norm() > 9.0) {  // fold back toward the centre
        heading = (-next.normalized() + 0.3 * turn).normalized();
        next = p + 3.8 * heading;
      }
      p = next;
    }
    pdb += "END\n";
    protfold::write_file(dir / "structures" / (id + ".pdb"), pdb);
  };

  for (int i = 0; i < o.soluble; ++i) {
    emit(fmt::format("sol{:02d}", i), 0.8 + 0.2 * i / std::max(1, o.soluble), soluble_alphabet,
         i < o.with_structure_soluble);
  }
  for (int i = 0; i < o.insoluble; ++i) {
    emit(fmt::format("ins{:02d}", i), 0.05 + 0.2 * i / std::max(1, o.insoluble),
         insoluble_alphabet, i < o.with_structure_insoluble);
  }
  for (int i = 0; i < o.excluded; ++i) emit(fmt::format("mid{:02d}", i), 0.5, "ACDEGWYVTK", false);

  std::string scores = "residue,c1,c2,c3\n";
  for (int a = 0; a < 20; ++a) {
    scores += fmt::format("{},{},{},{}\n", protfold::kAlphabet[a], std::sin(a + 1.0),
                          std::cos(0.7 * a), 0.05 * a - 0.5);
  }
  protfold::write_file(dir / "solubility.csv", solubility);
  protfold::write_file(dir / "sequences.fasta", fasta);
  protfold::write_file(dir / "scores.csv", scores);
}

protfold::ExperimentConfig corpus_config(const fs::path &dir,
                                         protfold::Representation representation) {
  protfold::ExperimentConfig c;
  c.representation = representation;
  c.data.solubility = dir / "solubility.csv";
  c.data.sequences = dir / "sequences.fasta";
  c.data.structures = dir / "structures";
  c.data.component_scores = dir / "scores.csv";
  c.split.train_fraction = 0.5;
  c.seed = 5;
  c.out = dir / "out";
  c.ga.population_size = 8;
  c.ga.max_iterations = 3;
  return c;
}

}  // namespace fixture
