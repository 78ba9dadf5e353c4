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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hotelling/analysis.hpp"
#include "hotelling/errors.hpp"
#include "hotelling/winner_ne.hpp"

namespace hotelling {

enum class Suite { kSupportBounds, kTwoAgent, kAlgorithm1, kAlgorithm2, kReduce };

inline std::string to_string(Suite s) {
  switch (s) {
    case Suite::kSupportBounds: return "support-bounds";
    case Suite::kTwoAgent: return "two-agent";
    case Suite::kAlgorithm1: return "alg1";
    case Suite::kAlgorithm2: return "alg2";
    case Suite::kReduce: return "reduce";
  }
  return "?";
}

inline Suite parse_suite(const std::string& s) {
  for (Suite v : {Suite::kSupportBounds, Suite::kTwoAgent, Suite::kAlgorithm1, Suite::kAlgorithm2, Suite::kReduce})
    if (to_string(v) == s) return v;
  throw ParseError("unknown suite \"" + s + "\" (expected support-bounds, two-agent, alg1, alg2 or reduce)");
}

struct CorpusSpec {
  InstanceSpec instance;
  Suite suite = Suite::kSupportBounds;
  long instances = 100;
  std::uint64_t seed = 1;
  int random_starts = 32;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CorpusRecord {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::vector<Rational> widths;
  std::vector<std::pair<std::string, std::string>> fields;
  bool certified = false;  // the suite produced something to check
  bool ok = false;         // every check passed
  std::string error;
};

struct CorpusSummary {
  long instances = 0;
  long certified = 0;
  long violations = 0;
  long errors = 0;
};

namespace detail {

inline std::string flag(bool b) { return b ? "1" : "0"; }

inline std::string join_profile(const Profile& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + p[i].str();
  return s;
}

inline CorpusRecord support_bounds_record(const Game& game, std::uint64_t seed, int starts) {
  CorpusRecord rec;
  const EquilibriumSearch found = find_support_equilibria(game, seed, starts);
  rec.fields = {{"equilibria", std::to_string(found.exact.size())},
                {"approximate", std::to_string(found.approximate.size())},
                {"max_moves", std::to_string(found.max_moves)}};
  if (found.exact.empty()) {
    for (const char* k : {"fairness_ratio", "fairness_bound", "welfare", "optimal_welfare", "welfare_ratio",
                          "uncovered", "uncovered_bound", "fair_ok", "pairwise_ok", "poa_ok", "uncovered_ok"})
      rec.fields.emplace_back(k, "");
    return rec;
  }
  const AnalysisReport r = poa_report(game, found.exact);
  rec.fields.insert(rec.fields.end(), {{"fairness_ratio", r.fairness_ratio.str()},
                                       {"fairness_bound", r.fairness_bound.str()},
                                       {"welfare", r.welfare.str()},
                                       {"optimal_welfare", r.optimal_welfare.str()},
                                       {"welfare_ratio", r.welfare_ratio.str()},
                                       {"uncovered", r.uncovered.str()},
                                       {"uncovered_bound", r.uncovered_bound.str()},
                                       {"fair_ok", flag(r.fairness_ok)},
                                       {"pairwise_ok", flag(r.pairwise_ok)},
                                       {"poa_ok", flag(r.poa_ok)},
                                       {"uncovered_ok", flag(r.uncovered_ok)}});
  rec.certified = true;
  rec.ok = r.all_ok();
  return rec;
}

inline CorpusRecord construction_record(const Game& game, Suite suite) {
  CorpusRecord rec;
  ConstructionResult c;
  switch (suite) {
    case Suite::kTwoAgent: c = two_agent_ne(game); break;
    case Suite::kAlgorithm1: c = algorithm1(game); break;
    case Suite::kAlgorithm2: c = algorithm2(game); break;
    default: c = reduced_ne(game); break;
  }
  rec.fields = {{"case", to_string(c.case_tag) + (c.inner_tag ? "/" + to_string(*c.inner_tag) : "")},
                {"profile", join_profile(c.profile)},
                {"certified", flag(c.certificate.equilibrium())}};
  rec.certified = true;
  rec.ok = c.certificate.equilibrium();
  return rec;
}

}  // namespace detail

inline InstanceSpec suite_defaults(Suite suite, InstanceSpec spec) {
  spec.mode = suite == Suite::kSupportBounds ? UtilityMode::kSupport : UtilityMode::kWinner;
  if (suite != Suite::kSupportBounds) spec.equal_widths = true;
  return spec;
}

inline CorpusRecord run_instance(const CorpusSpec& spec, std::uint64_t seed) {
  const InstanceSpec is = suite_defaults(spec.suite, spec.instance);
  const Game game = random_instance(seed, is);
  CorpusRecord rec;
  try {
    rec = spec.suite == Suite::kSupportBounds ? detail::support_bounds_record(game, seed, spec.random_starts)
                                              : detail::construction_record(game, spec.suite);
  } catch (const std::exception& e) {
    rec = CorpusRecord{};
    rec.error = e.what();
  }
  rec.seed = seed;
  rec.n = game.agents();
  rec.widths = game.widths();
  return rec;
}

// Instances use seeds spec.seed, spec.seed + 1, ...; they are processed on
// worker threads and returned in seed order.
inline std::vector<CorpusRecord> run_corpus(const CorpusSpec& spec) {
  validate_spec(suite_defaults(spec.suite, spec.instance));
  if (spec.instances < 0) throw ConfigError("instance count must be nonnegative");
  std::vector<CorpusRecord> out(static_cast<std::size_t>(spec.instances));
  std::atomic<long> next{0};
  const auto work = [&] {
    for (long k = next++; k < spec.instances; k = next++)
      out[static_cast<std::size_t>(k)] = run_instance(spec, spec.seed + static_cast<std::uint64_t>(k));
  };
  unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<long>(workers, std::max(1L, spec.instances)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

inline CorpusSummary summarize(const std::vector<CorpusRecord>& records) {
  CorpusSummary s;
  for (const auto& r : records) {
    ++s.instances;
    if (!r.error.empty()) {
      ++s.errors;
      continue;
    }
    if (r.certified) ++s.certified;
    if (r.certified && !r.ok) ++s.violations;
  }
  return s;
}

}  // namespace hotelling
