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

// Built-in worked instances with their known exact outcomes.

#pragma once

#include <string>
#include <vector>

#include "hotelling/analysis.hpp"
#include "hotelling/errors.hpp"
#include "hotelling/game.hpp"
#include "hotelling/verifier.hpp"
#include "hotelling/winner_ne.hpp"

namespace hotelling {

struct Check {
  std::string target;
  std::string name;
  std::string expected;
  std::string observed;
  bool pass() const { return expected == observed; }
};

namespace detail {

inline std::string list_str(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

inline std::string set_str(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i] + 1);
  return s + "}";
}

inline std::string deviation_str(const NeCertificate& c) {
  if (!c.best_deviation) return "none";
  const Deviation& d = *c.best_deviation;
  return "agent " + std::to_string(d.agent + 1) + " -> " + d.location.str() + ", " + d.old_utility.str() + " -> " +
         d.new_utility.str();
}

}  // namespace detail

inline Game example2_game(UtilityMode mode) {
  return Game(Density::uniform(), {Rational(2, 5), Rational(3, 10), Rational(2, 5)}, mode);
}

inline Profile example2_profile() { return {Rational(1, 5), Rational(13, 20), Rational(4, 5)}; }

inline Game example4_game() {
  return Game(Density::from_pieces({{Rational(2, 5), Rational(5, 4)}, {Rational(1), Rational(5, 6)}}),
              {Rational(2, 5), Rational(2, 5)}, UtilityMode::kWinner);
}

inline std::vector<Check> reproduce_example2() {
  const std::string t = "example2";
  const Game g = example2_game(UtilityMode::kSupport);
  const Profile x = example2_profile();
  const UtilityReport r = utility_report(g, x);
  const std::vector<Rational> counts = congestion(g, x).values();
  return {
      {t, "supports", "(2/5, 1/5, 3/10)", detail::list_str(r.supports)},
      {t, "congestion pieces", "(1, 0, 1, 2, 1)", detail::list_str(counts)},
      {t, "winner set", "{1}", detail::set_str(r.winner_set)},
      {t, "support-mode verdict", "not-equilibrium", to_string(verify_exact(g, x).verdict)},
      {t, "winner-mode verdict", "equilibrium", to_string(verify_exact(example2_game(UtilityMode::kWinner), x).verdict)},
  };
}

inline std::vector<Check> reproduce_example4() {
  const std::string t = "example4";
  const Game g = example4_game();
  const Profile stacked{Rational(1, 5), Rational(1, 5)};
  const Profile apart{Rational(1, 5), Rational(4, 5)};
  const UtilityReport r = utility_report(g, stacked);
  const NeCertificate refuted = verify_exact(g, apart);
  return {
      {t, "winner set at (1/5, 1/5)", "{1, 2}", detail::set_str(r.winner_set)},
      {t, "utilities at (1/5, 1/5)", "(1/2, 1/2)", detail::list_str(r.utilities)},
      {t, "verdict at (1/5, 1/5)", "equilibrium", to_string(verify_exact(g, stacked).verdict)},
      {t, "verdict at (1/5, 4/5)", "not-equilibrium", to_string(refuted.verdict)},
      {t, "deviation at (1/5, 4/5)", "agent 2 -> 1/5, 0 -> 1/2", detail::deviation_str(refuted)},
      {t, "two-agent construction", "(1/5, 1/5)", detail::list_str(two_agent_ne(g).profile)},
  };
}

inline std::vector<Check> reproduce_ordinal() {
  const OrdinalReplay replay = replay_ordinal_counterexample();
  std::vector<Check> out;
  const auto sign = [](int s) { return std::string(s > 0 ? "+" : s < 0 ? "-" : "0"); };
  for (const auto& s : replay.steps)
    out.push_back({"ordinal", "path " + std::to_string(s.path) + " step " + std::to_string(s.step) + " agent " +
                                  std::to_string(s.mover + 1) + " utility change",
                   sign(s.expected_sign), sign(s.observed_sign())});
  return out;
}

inline std::vector<Check> reproduce_fairness_tight() {
  const std::string t = "fairness-tight";
  const Game g = fairness_tight_game();
  const Profile x{Rational(1, 4), Rational(3, 4)};
  const auto ratio = fairness_ratio(g, x);
  return {
      {t, "supports", "(1/3, 2/3)", detail::list_str(support_vector(g, x))},
      {t, "verdict", "equilibrium", to_string(verify_support_ne(g, x).verdict)},
      {t, "fairness ratio", "1/2", ratio ? ratio->str() : "degenerate"},
      {t, "fairness bound", "1/2", fairness_bound(g).str()},
  };
}

inline std::vector<Check> reproduce_poa_family(long n) {
  const std::string t = "poa-family " + std::to_string(n);
  const Game g = poa_family_game(n);
  const AnalysisReport r = poa_report(g, {poa_family_equilibrium(n)});
  const Rational closed = Rational(n) / Rational(2 * n - 1);
  return {
      {t, "welfare", closed.str(), r.welfare.str()},
      {t, "optimal welfare", "1", r.optimal_welfare.str()},
      {t, "welfare ratio", closed.str(), r.welfare_ratio.str()},
      {t, "ratio above 1/2", "1", r.welfare_ratio > Rational(1, 2) ? "1" : "0"},
  };
}

// "all" runs every target, with the family at n = 2..10.
inline std::vector<Check> reproduce(const std::string& which, long family_n = 10) {
  if (which == "example2") return reproduce_example2();
  if (which == "example4") return reproduce_example4();
  if (which == "ordinal") return reproduce_ordinal();
  if (which == "fairness-tight") return reproduce_fairness_tight();
  if (which == "poa-family") return reproduce_poa_family(family_n);
  if (which == "all") {
    std::vector<Check> out;
    for (const char* w : {"example2", "example4", "ordinal", "fairness-tight"}) {
      auto part = reproduce(w);
      out.insert(out.end(), part.begin(), part.end());
    }
    for (long n = 2; n <= 10; ++n) {
      auto part = reproduce_poa_family(n);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw ParseError("unknown reproduction target \"" + which +
                   "\" (expected example2, example4, ordinal, fairness-tight, poa-family or all)");
}

}  // namespace hotelling
