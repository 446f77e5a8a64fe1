//
// protfold - Copyright 2026 The protfold Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "protfold/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <initializer_list>
#include <set>

#include <fmt/format.h>

#include "protfold/error.h"
#include "protfold/util.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace protfold {

namespace {

struct RepresentationName {
  Representation value;
  std::string_view name;
};

constexpr RepresentationName kRepresentations[] = {
    {Representation::Seq, "seq"},
    {Representation::SeqPam, "seq-pam"},
    {Representation::SeqLearned, "seq-learned"},
    {Representation::GraphDirect, "graph-direct"},
    {Representation::Seriated, "seriated"},
    {Representation::ComplexityFeatures, "complexity-features"},
};

std::string normalize_name(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '_' || c == ' ') c = '-';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string_view to_string(Representation r) noexcept {
  for (const auto &entry : kRepresentations) {
    if (entry.value == r) return entry.name;
  }
  return "unknown";
}

Representation parse_representation(std::string_view text) {
  const std::string key = normalize_name(text);
  for (const auto &entry : kRepresentations) {
    if (entry.name == key) return entry.value;
  }
  // Also accept the enum spellings, e.g. "SeqPam" or "GraphDirect".
  for (const auto &entry : kRepresentations) {
    std::string compact(entry.name);
    compact.erase(std::remove(compact.begin(), compact.end(), '-'), compact.end());
    std::string given = key;
    given.erase(std::remove(given.begin(), given.end(), '-'), given.end());
    if (compact == given) return entry.value;
  }
  throw ConfigError(fmt::format("unknown representation '{}'", text));
}

bool needs_structures(Representation r) noexcept {
  return r == Representation::GraphDirect || r == Representation::Seriated ||
         r == Representation::ComplexityFeatures;
}

// ---------------------------------------------------------------------------
// TOML subset

namespace {

class TomlParser {
 public:
  explicit TomlParser(std::string_view text) : text_(text) {}

  json parse() {
    json root = json::object();
    json *table = &root;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t eol = text_.find('\n', pos);
      if (eol == std::string_view::npos) eol = text_.size();
      line_ = text_.substr(pos, eol - pos);
      ++lineno_;
      col_ = 0;
      pos = eol + 1;

      skip_space();
      if (at_end_of_content()) continue;
      if (peek() == '[') {
        ++col_;
        table = &root;
        for (const auto &part : parse_key_path(']')) {
          json &next = (*table)[part];
          if (next.is_null()) next = json::object();
          if (!next.is_object()) fail(fmt::format("'{}' is not a table", part));
          table = &next;
        }
        expect(']');
        skip_space();
        if (!at_end_of_content()) fail("unexpected text after table header");
        continue;
      }
      auto path = parse_key_path('=');
      expect('=');
      skip_space();
      json value = parse_value();
      skip_space();
      if (!at_end_of_content()) fail("unexpected text after value");
      json *target = table;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        json &next = (*target)[path[i]];
        if (next.is_null()) next = json::object();
        if (!next.is_object()) fail(fmt::format("'{}' is not a table", path[i]));
        target = &next;
      }
      if (target->contains(path.back())) fail(fmt::format("duplicate key '{}'", path.back()));
      (*target)[path.back()] = std::move(value);
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string &what) const {
    throw ConfigError(fmt::format("TOML line {}: {}", lineno_, what));
  }

  char peek() const { return col_ < line_.size() ? line_[col_] : '\0'; }
  bool at_end_of_content() const {
    return col_ >= line_.size() || line_[col_] == '#' || line_[col_] == '\r';
  }
  void skip_space() {
    while (col_ < line_.size() && (line_[col_] == ' ' || line_[col_] == '\t')) ++col_;
  }
  void expect(char c) {
    skip_space();
    if (peek() != c) fail(fmt::format("expected '{}'", c));
    ++col_;
  }

  std::vector<std::string> parse_key_path(char terminator) {
    std::vector<std::string> parts;
    while (true) {
      skip_space();
      if (peek() == '"') {
        parts.push_back(parse_basic_string());
      } else {
        std::size_t start = col_;
        while (col_ < line_.size() &&
               (std::isalnum(static_cast<unsigned char>(line_[col_])) || line_[col_] == '_' ||
                line_[col_] == '-')) {
          ++col_;
        }
        if (col_ == start) fail("expected a key");
        parts.emplace_back(line_.substr(start, col_ - start));
      }
      skip_space();
      if (peek() == '.') {
        ++col_;
        continue;
      }
      if (peek() != terminator) fail(fmt::format("expected '{}' after key", terminator));
      return parts;
    }
  }

  std::string parse_basic_string() {
    ++col_;  // opening quote
    std::string out;
    while (col_ < line_.size()) {
      char c = line_[col_++];
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (col_ >= line_.size()) break;
      switch (char e = line_[col_++]) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        default: fail(fmt::format("unsupported escape '\\{}'", e));
      }
    }
    fail("unterminated string");
  }

  std::string parse_literal_string() {
    ++col_;
    std::size_t end = line_.find('\'', col_);
    if (end == std::string_view::npos) fail("unterminated string");
    std::string out(line_.substr(col_, end - col_));
    col_ = end + 1;
    return out;
  }

  json parse_value() {
    char c = peek();
    if (c == '"') return parse_basic_string();
    if (c == '\'') return parse_literal_string();
    if (c == '[') {
      ++col_;
      json arr = json::array();
      skip_space();
      if (peek() == ']') {
        ++col_;
        return arr;
      }
      while (true) {
        skip_space();
        if (peek() == '[') fail("nested arrays are not supported");
        arr.push_back(parse_value());
        skip_space();
        if (peek() == ',') {
          ++col_;
          skip_space();
          if (peek() == ']') {
            ++col_;
            return arr;
          }
          continue;
        }
        if (peek() == ']') {
          ++col_;
          return arr;
        }
        fail("expected ',' or ']' in array");
      }
    }
    std::size_t start = col_;
    while (col_ < line_.size() && line_[col_] != ',' && line_[col_] != ']' &&
           line_[col_] != '#' && line_[col_] != ' ' && line_[col_] != '\t' &&
           line_[col_] != '\r') {
      ++col_;
    }
    std::string token(line_.substr(start, col_ - start));
    if (token == "true") return true;
    if (token == "false") return false;
    token.erase(std::remove(token.begin(), token.end(), '_'), token.end());
    if (token.empty()) fail("missing value");
    const char *first = token.data() + (token[0] == '+' ? 1 : 0);
    const char *last = token.data() + token.size();
    if (token.find_first_of(".eE") == std::string::npos || token == "inf" || token == "nan") {
      std::int64_t integer = 0;
      auto [p, ec] = std::from_chars(first, last, integer);
      if (ec == std::errc() && p == last) {
        if (integer >= 0) return static_cast<std::uint64_t>(integer);
        return integer;
      }
    }
    double real = 0.0;
    auto [p, ec] = std::from_chars(first, last, real);
    if (ec != std::errc() || p != last) fail(fmt::format("cannot parse value '{}'", token));
    return real;
  }

  std::string_view text_;
  std::string_view line_;
  std::size_t col_ = 0;
  std::size_t lineno_ = 0;
};

}  // namespace

json parse_toml(std::string_view text) { return TomlParser(text).parse(); }

// ---------------------------------------------------------------------------
// ExperimentConfig

namespace {

void check_keys(const json &j, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(fmt::format("'{}' must be a table", where));
  for (const auto &item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError(fmt::format("unknown key '{}' in '{}'", item.key(), where));
    }
  }
}

template <typename T>
void read(const json &j, std::string_view key, T &out, std::string_view where) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception &) {
    throw ConfigError(fmt::format("'{}.{}' has the wrong type", where, key));
  }
}

void read_path(const json &j, std::string_view key, fs::path &out, const fs::path &base) {
  auto it = j.find(key);
  if (it == j.end()) return;
  if (!it->is_string()) throw ConfigError(fmt::format("path '{}' must be a string", key));
  fs::path p = it->get<std::string>();
  if (p.empty()) {
    out.clear();
    return;
  }
  out = p.is_relative() && !base.empty() ? (base / p).lexically_normal() : p;
}

std::string weighting_name(EdgeWeighting w) {
  switch (w) {
    case EdgeWeighting::Unweighted: return "unweighted";
    case EdgeWeighting::Distance: return "distance";
    case EdgeWeighting::InverseDistance: return "inverse-distance";
  }
  return "distance";
}

EdgeWeighting parse_weighting(std::string_view text) {
  const std::string key = normalize_name(text);
  if (key == "unweighted") return EdgeWeighting::Unweighted;
  if (key == "distance") return EdgeWeighting::Distance;
  if (key == "inverse-distance") return EdgeWeighting::InverseDistance;
  throw ConfigError(fmt::format("unknown seriation weighting '{}'", text));
}

std::string path_string(const fs::path &p) {
  if (p.empty()) return {};
  return fs::absolute(p).lexically_normal().string();
}

}  // namespace

void ExperimentConfig::validate() const {
  auto need_file = [](const fs::path &p, std::string_view what) {
    if (p.empty()) throw ConfigError(fmt::format("{} path is required", what));
    if (!fs::is_regular_file(p)) {
      throw ConfigError(fmt::format("{} file '{}' does not exist", what, p.string()));
    }
  };
  need_file(data.solubility, "solubility");
  need_file(data.sequences, "sequences");
  if (!data.cost_matrix.empty()) need_file(data.cost_matrix, "cost matrix");
  if (!data.test_ids.empty()) need_file(data.test_ids, "test id");

  const bool structures = needs_structures(representation) || subset == SequenceSubset::WithStructure;
  if (structures) {
    if (data.structures.empty() || !fs::is_directory(data.structures)) {
      throw ConfigError(fmt::format("representation '{}' needs a structures directory",
                                    to_string(representation)));
    }
    if (data.component_scores.empty() && data.descriptors.empty()) {
      throw ConfigError("contact graphs need component_scores or descriptors");
    }
    if (!data.component_scores.empty()) need_file(data.component_scores, "component scores");
    if (!data.descriptors.empty()) need_file(data.descriptors, "descriptors");
  }
  if (!(svm_c > 0.0)) throw ConfigError(fmt::format("svm C must be positive, got {}", svm_c));
  if (!(svm_positive_weight > 0.0) || !(svm_negative_weight > 0.0)) {
    throw ConfigError("svm class weights must be positive");
  }
  if (!(r_min >= 0.0 && r_min < r_max)) {
    throw ConfigError(fmt::format("contact window needs 0 <= r_min < r_max, got ({}, {})", r_min,
                                  r_max));
  }
  if (!(indel_cost > 0.0)) throw ConfigError("indel cost must be positive");
  if (!(vector_scale > 0.0)) throw ConfigError("vector scale must be positive");
  if (!(gaussian_sigma >= 0.0)) throw ConfigError("gaussian sigma must be >= 0");
  if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie in (0, 1)");
  }
  if (!(control_fraction > 0.0 && control_fraction < 1.0)) {
    throw ConfigError("control_fraction must lie in (0, 1)");
  }
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (representation == Representation::SeqLearned && data.cost_matrix.empty()) ga.validate();
}

json ExperimentConfig::to_json() const {
  json split_j = {{"train_fraction", split.train_fraction}};
  if (split.test_counts) {
    split_j["test_counts"] = {{"soluble", split.test_counts->soluble},
                              {"insoluble", split.test_counts->insoluble}};
  }
  split_j["test_ids"] = path_string(data.test_ids);
  return {
      {"dataset", dataset},
      {"representation", to_string(representation)},
      {"seed", seed},
      {"out", path_string(out)},
      {"threads", threads},
      {"data",
       {{"solubility", path_string(data.solubility)},
        {"sequences", path_string(data.sequences)},
        {"structures", path_string(data.structures)},
        {"component_scores", path_string(data.component_scores)},
        {"descriptors", path_string(data.descriptors)},
        {"cost_matrix", path_string(data.cost_matrix)}}},
      {"split", split_j},
      {"sequence",
       {{"subset", subset == SequenceSubset::All ? "all" : "with-structure"},
        {"nonstandard", nonstandard == NonstandardPolicy::Drop ? "drop" : "map"},
        {"indel_cost", indel_cost},
        {"vector_scale", vector_scale}}},
      {"graph",
       {{"r_min", r_min}, {"r_max", r_max}, {"seriation_weighting", weighting_name(seriation_weighting)}}},
      {"svm",
       {{"c", svm_c},
        {"positive_weight", svm_positive_weight},
        {"negative_weight", svm_negative_weight}}},
      {"ga",
       {{"population_size", ga.population_size},
        {"elite_count", ga.elite_count},
        {"crossover_rate", ga.crossover_rate},
        {"mutation_rate", ga.mutation_rate},
        {"mutation_scale", ga.mutation_scale},
        {"max_iterations", ga.max_iterations},
        {"stagnation_window", ga.stagnation_window},
        {"tournament_size", ga.tournament_size},
        {"symmetric", ga.symmetric},
        {"control_fraction", control_fraction},
        {"balanced_fitness", balanced_fitness}}},
      {"complexity", {{"ambiguity_budget", ambiguity_budget}, {"gaussian_sigma", gaussian_sigma}}},
  };
}

ExperimentConfig ExperimentConfig::from_json(const json &j, const fs::path &base) {
  ExperimentConfig c;
  check_keys(j, "config",
             {"dataset", "representation", "seed", "out", "threads", "data", "split", "sequence",
              "graph", "svm", "ga", "complexity"});
  read(j, "dataset", c.dataset, "config");
  if (j.contains("representation")) {
    if (!j["representation"].is_string()) throw ConfigError("'representation' must be a string");
    c.representation = parse_representation(j["representation"].get<std::string>());
  }
  read(j, "seed", c.seed, "config");
  read(j, "threads", c.threads, "config");
  read_path(j, "out", c.out, base);

  if (auto it = j.find("data"); it != j.end()) {
    check_keys(*it, "data",
               {"solubility", "sequences", "structures", "component_scores", "descriptors",
                "cost_matrix"});
    read_path(*it, "solubility", c.data.solubility, base);
    read_path(*it, "sequences", c.data.sequences, base);
    read_path(*it, "structures", c.data.structures, base);
    read_path(*it, "component_scores", c.data.component_scores, base);
    read_path(*it, "descriptors", c.data.descriptors, base);
    read_path(*it, "cost_matrix", c.data.cost_matrix, base);
  }
  if (auto it = j.find("split"); it != j.end()) {
    check_keys(*it, "split", {"train_fraction", "test_counts", "test_ids"});
    read(*it, "train_fraction", c.split.train_fraction, "split");
    read_path(*it, "test_ids", c.data.test_ids, base);
    if (auto tc = it->find("test_counts"); tc != it->end()) {
      check_keys(*tc, "split.test_counts", {"soluble", "insoluble"});
      ClassCounts counts;
      read(*tc, "soluble", counts.soluble, "split.test_counts");
      read(*tc, "insoluble", counts.insoluble, "split.test_counts");
      c.split.test_counts = counts;
    }
  }
  if (auto it = j.find("sequence"); it != j.end()) {
    check_keys(*it, "sequence", {"subset", "nonstandard", "indel_cost", "vector_scale"});
    std::string subset = "all", policy = "drop";
    read(*it, "subset", subset, "sequence");
    read(*it, "nonstandard", policy, "sequence");
    subset = normalize_name(subset);
    if (subset == "all") c.subset = SequenceSubset::All;
    else if (subset == "with-structure") c.subset = SequenceSubset::WithStructure;
    else throw ConfigError(fmt::format("unknown sequence subset '{}'", subset));
    policy = normalize_name(policy);
    if (policy == "drop") c.nonstandard = NonstandardPolicy::Drop;
    else if (policy == "map") c.nonstandard = NonstandardPolicy::Map;
    else throw ConfigError(fmt::format("unknown nonstandard policy '{}'", policy));
    read(*it, "indel_cost", c.indel_cost, "sequence");
    read(*it, "vector_scale", c.vector_scale, "sequence");
  }
  if (auto it = j.find("graph"); it != j.end()) {
    check_keys(*it, "graph", {"r_min", "r_max", "seriation_weighting"});
    read(*it, "r_min", c.r_min, "graph");
    read(*it, "r_max", c.r_max, "graph");
    std::string w = weighting_name(c.seriation_weighting);
    read(*it, "seriation_weighting", w, "graph");
    c.seriation_weighting = parse_weighting(w);
  }
  if (auto it = j.find("svm"); it != j.end()) {
    check_keys(*it, "svm", {"c", "positive_weight", "negative_weight"});
    read(*it, "c", c.svm_c, "svm");
    read(*it, "positive_weight", c.svm_positive_weight, "svm");
    read(*it, "negative_weight", c.svm_negative_weight, "svm");
  }
  if (auto it = j.find("ga"); it != j.end()) {
    check_keys(*it, "ga",
               {"population_size", "elite_count", "crossover_rate", "mutation_rate",
                "mutation_scale", "max_iterations", "stagnation_window", "tournament_size",
                "symmetric", "control_fraction", "balanced_fitness"});
    read(*it, "population_size", c.ga.population_size, "ga");
    read(*it, "elite_count", c.ga.elite_count, "ga");
    read(*it, "crossover_rate", c.ga.crossover_rate, "ga");
    read(*it, "mutation_rate", c.ga.mutation_rate, "ga");
    read(*it, "mutation_scale", c.ga.mutation_scale, "ga");
    read(*it, "max_iterations", c.ga.max_iterations, "ga");
    read(*it, "stagnation_window", c.ga.stagnation_window, "ga");
    read(*it, "tournament_size", c.ga.tournament_size, "ga");
    read(*it, "symmetric", c.ga.symmetric, "ga");
    read(*it, "control_fraction", c.control_fraction, "ga");
    read(*it, "balanced_fitness", c.balanced_fitness, "ga");
  }
  if (auto it = j.find("complexity"); it != j.end()) {
    check_keys(*it, "complexity", {"ambiguity_budget", "gaussian_sigma"});
    read(*it, "ambiguity_budget", c.ambiguity_budget, "complexity");
    read(*it, "gaussian_sigma", c.gaussian_sigma, "complexity");
  }
  return c;
}

ExperimentConfig load_config(const fs::path &path) {
  if (!fs::is_regular_file(path)) {
    throw ConfigError(fmt::format("config file '{}' does not exist", path.string()));
  }
  const std::string text = read_file(path);
  json j;
  const std::string ext = normalize_name(path.extension().string());
  if (ext == ".toml") {
    j = parse_toml(text);
  } else {
    try {
      j = json::parse(text);
    } catch (const json::parse_error &e) {
      throw ConfigError(fmt::format("config '{}': {}", path.string(), e.what()));
    }
  }
  return ExperimentConfig::from_json(j, fs::absolute(path).parent_path());
}

}  // namespace protfold
