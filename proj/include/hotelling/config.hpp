// Copyright 2026 The Hotelling Attraction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run configuration files and the two output formats.
//
// A configuration is a flat list of `key = value` lines; `#` starts a
// comment. Rationals are written as "p/q", integers, or finite decimals and
// are read exactly. Example:
//
//   density = 0.4:5/4, 1:5/6      # upto:value pieces, last upto is 1
//   widths  = 0.4, 0.4
//   mode    = winner

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hotelling/corpus.hpp"
#include "hotelling/errors.hpp"
#include "hotelling/game.hpp"
#include "hotelling/rational.hpp"

namespace hotelling {

enum class OutputFormat { kTable, kRecords };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::kTable;
  if (s == "records") return OutputFormat::kRecords;
  throw ParseError("unknown format \"" + s + "\" (expected table or records)");
}

struct DensityPiece {
  Rational upto;
  Rational value;
};

struct RunConfig {
  std::vector<DensityPiece> density{{Rational(1), Rational(1)}};
  std::vector<Rational> widths;
  UtilityMode mode = UtilityMode::kSupport;
  Rational epsilon{1, 1000000000};
  Rational grid_step{1, 1000};
  long round_limit = 100000;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::kTable;
  std::optional<Profile> profile;
  CorpusSpec corpus;

  Game game() const {
    std::vector<std::pair<Rational, Rational>> pieces;
    for (const auto& p : density) pieces.emplace_back(p.upto, p.value);
    return Game(Density::from_pieces(pieces), widths, mode);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline Rational field_rational(const std::string& field, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(field + ": " + e.what());
  }
}

inline long field_long(const std::string& field, const std::string& text) {
  const Rational r = field_rational(field, text);
  if (!r.is_integer()) throw ParseError(field + ": expected an integer, got \"" + text + "\"");
  return r.to_long();
}

inline bool field_bool(const std::string& field, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ParseError(field + ": expected true or false, got \"" + text + "\"");
}

}  // namespace detail

// Comma-separated rationals; an empty string is the empty list.
inline std::vector<Rational> parse_rational_list(const std::string& field, const std::string& text) {
  std::vector<Rational> out;
  if (detail::trim(text).empty()) return out;
  for (const auto& item : detail::split(text, ',')) out.push_back(detail::field_rational(field, item));
  return out;
}

inline std::vector<DensityPiece> parse_density(const std::string& text) {
  std::vector<DensityPiece> out;
  for (const auto& item : detail::split(text, ',')) {
    const auto parts = detail::split(item, ':');
    if (parts.size() != 2) throw ParseError("density: piece \"" + item + "\" is not upto:value");
    out.push_back({detail::field_rational("density", parts[0]), detail::field_rational("density", parts[1])});
  }
  if (out.empty()) throw ConfigError("density: no pieces");
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Rational prev = k ? out[k - 1].upto : Rational(0);
    if (out[k].upto <= prev) throw ConfigError("density: upto values must be strictly ascending in (0,1]");
  }
  if (out.back().upto != Rational(1)) throw ConfigError("density: last upto must be 1");
  return out;
}

inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  using detail::field_bool;
  using detail::field_long;
  using detail::field_rational;
  InstanceSpec& is = cfg.corpus.instance;
  if (key == "density") cfg.density = parse_density(value);
  else if (key == "widths") cfg.widths = parse_rational_list("widths", value);
  else if (key == "mode") cfg.mode = parse_mode(value);
  else if (key == "epsilon") cfg.epsilon = field_rational("epsilon", value);
  else if (key == "grid_step") cfg.grid_step = field_rational("grid_step", value);
  else if (key == "round_limit") cfg.round_limit = field_long("round_limit", value);
  else if (key == "seed") cfg.seed = cfg.corpus.seed = static_cast<std::uint64_t>(field_long("seed", value));
  else if (key == "format") cfg.format = parse_format(value);
  else if (key == "profile") cfg.profile = parse_rational_list("profile", value);
  else if (key == "suite") cfg.corpus.suite = parse_suite(value);
  else if (key == "instances") cfg.corpus.instances = field_long("instances", value);
  else if (key == "starts") cfg.corpus.random_starts = static_cast<int>(field_long("starts", value));
  else if (key == "threads") cfg.corpus.threads = static_cast<unsigned>(field_long("threads", value));
  else if (key == "n_min") is.n_min = field_long("n_min", value);
  else if (key == "n_max") is.n_max = field_long("n_max", value);
  else if (key == "width_set") is.width_set = parse_rational_list("width_set", value);
  else if (key == "equal_widths") is.equal_widths = field_bool("equal_widths", value);
  else if (key == "pieces_min") is.pieces_min = field_long("pieces_min", value);
  else if (key == "pieces_max") is.pieces_max = field_long("pieces_max", value);
  else if (key == "granularity") is.granularity = field_rational("granularity", value);
  else throw ConfigError("unknown key \"" + key + "\"");
}

inline RunConfig parse_config(std::istream& in, RunConfig cfg = {}) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(number) + ": expected key = value");
    try {
      apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(number) + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path, RunConfig cfg = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in, std::move(cfg));
}

// "p/q (0.xxxxxx)"
inline std::string render(const Rational& r) { return r.str() + " (" + r.decimal(6) + ")"; }

// Line-delimited records: a header row, then one comma-separated row per
// record. Fields never contain commas; lists inside a field use ';'.
class RecordWriter {
 public:
  RecordWriter(std::ostream& out, std::vector<std::string> columns) : out_(out), columns_(std::move(columns)) {
    row(columns_);
  }

  void row(const std::vector<std::string>& values) {
    if (values.size() != columns_.size())
      throw InternalInvariantError("record has " + std::to_string(values.size()) + " fields, header has " +
                                   std::to_string(columns_.size()));
    for (std::size_t k = 0; k < values.size(); ++k) out_ << (k ? "," : "") << values[k];
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  std::vector<std::string> columns_;
};

// Reads records back as rows of column -> text.
inline std::vector<std::map<std::string, std::string>> read_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  const auto header = detail::split(line, ',');
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto values = detail::split(line, ',');
    if (values.size() != header.size()) throw ParseError("record \"" + line + "\" does not match header");
    std::map<std::string, std::string> row;
    for (std::size_t k = 0; k < header.size(); ++k) row[header[k]] = values[k];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hotelling
