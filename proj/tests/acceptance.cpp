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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hotelling/analysis.hpp"
#include "hotelling/corpus.hpp"
#include "hotelling/reproduce.hpp"
#include "hotelling/support_dynamics.hpp"
#include "hotelling/verifier.hpp"
#include "hotelling/winner_ne.hpp"
#include "oracles.hpp"

namespace {

using namespace hotelling;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Runs body(k) for k in [0, count) on all cores; body writes only slot k.
void parallel_for(long count, const std::function<void(long)>& body) {
  std::atomic<long> next{0};
  const auto work = [&] {
    for (long k = next++; k < count; k = next++) body(k);
  };
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

Outcome criterion1() {
  Outcome o;
  const Game support = example2_game(UtilityMode::kSupport);
  const Game winner = example2_game(UtilityMode::kWinner);
  const Profile x = example2_profile();
  const UtilityReport r = utility_report(support, x);
  std::vector<Rational> counts = congestion(support, x).values();
  o.pass = r.supports == std::vector<Rational>{Rational(2, 5), Rational(1, 5), Rational(3, 10)} &&
           counts == std::vector<Rational>{Rational(1), Rational(0), Rational(1), Rational(2), Rational(1)} &&
           r.winner_set == std::vector<std::size_t>{0} && !verify_exact(support, x).equilibrium() &&
           verify_exact(winner, x).equilibrium();
  o.detail = "supports " + detail::list_str(r.supports) + ", congestion " + detail::list_str(counts) + ", winners " +
             detail::set_str(r.winner_set);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const OrdinalReplay replay = replay_ordinal_counterexample();
  const std::vector<std::pair<int, std::vector<int>>> expected{{1, {-1, -1, 0, 0}}, {2, {+1}}};
  std::ostringstream signs;
  std::size_t k = 0;
  for (const auto& [path, pattern] : expected)
    for (int s : pattern) {
      if (k >= replay.steps.size() || replay.steps[k].path != path || replay.steps[k].observed_sign() != s)
        o.pass = false;
      ++k;
    }
  if (k != replay.steps.size()) o.pass = false;
  for (const auto& s : replay.steps) signs << " " << s.path << "." << s.step << ":" << s.observed_sign();
  o.detail = "signs" + signs.str();
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(3);
  InstanceSpec spec;
  long checked = 0, mismatches = 0;
  for (std::uint64_t seed = 0; checked < 1000; ++seed) {
    const Game g = random_instance(30000 + seed, spec);
    const Profile x = oracle::random_profile(rng, g);
    const std::size_t i = draw_below(rng, g.agents());
    Profile y = x;
    y[i] = oracle::random_location(rng, g, i);
    const Rational dphi = potential(g, y) - potential(g, x);
    const Rational du = support_vector(g, y)[i] - support_vector(g, x)[i];
    if (dphi != du || dphi != oracle::potential(g, y) - oracle::potential(g, x)) ++mismatches;
    ++checked;
  }
  o.pass = mismatches == 0;
  o.detail = std::to_string(checked) + " triples, " + std::to_string(mismatches) + " mismatches";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const long count = 500;
  const Rational eps(1, 1000000);
  InstanceSpec spec;
  spec.n_max = 6;
  std::vector<long> moves(count), bound(count);
  std::vector<char> ok(count);
  parallel_for(count, [&](long k) {
    const Game g = random_instance(40000 + static_cast<std::uint64_t>(k), spec);
    std::mt19937_64 rng(static_cast<std::uint64_t>(k));
    DynamicsOptions opts;
    opts.epsilon = eps;
    opts.round_limit = 100000000;
    const DynamicsResult run = run_dynamics(g, random_profile(rng, g), opts);
    moves[k] = static_cast<long>(run.trace.rounds.size());
    bound[k] = (harmonic(static_cast<long>(g.agents())) / eps).ceil().to_long();
    ok[k] = run.trace.terminated && moves[k] <= bound[k] && verify_support_ne(g, run.profile, eps).equilibrium();
  });
  long failures = 0;
  for (long k = 0; k < count; ++k) failures += ok[k] ? 0 : 1;
  o.pass = failures == 0;
  o.detail = std::to_string(count) + " instances, max moves " + std::to_string(*std::max_element(moves.begin(), moves.end())) +
             " (smallest bound " + std::to_string(*std::min_element(bound.begin(), bound.end())) + "), " +
             std::to_string(failures) + " failures";
  return o;
}

Outcome criterion5() {
  Outcome o;
  struct Family {
    const char* name;
    long n_min, n_max;
    std::vector<Rational> widths;
    std::function<ConstructionResult(const Game&)> build;
  };
  const std::vector<Family> families{
      {"two-agent", 2, 2, {Rational(1, 5), Rational(1, 4), Rational(1, 3), Rational(2, 5), Rational(1, 2), Rational(3, 4)},
       two_agent_ne},
      {"alg1", 3, 3, {Rational(1, 5), Rational(1, 3), Rational(2, 5)}, algorithm1},
      {"alg2", 2, 8, {Rational(1, 2)}, algorithm2},
      {"reduce", 1, 6, {Rational(3, 5), Rational(3, 4)}, reduced_ne},
  };
  for (std::size_t f = 0; f < families.size(); ++f) {
    const Family& fam = families[f];
    InstanceSpec spec;
    spec.n_min = fam.n_min;
    spec.n_max = fam.n_max;
    spec.width_set = fam.widths;
    spec.equal_widths = true;
    spec.mode = UtilityMode::kWinner;
    std::vector<char> ok(200);
    parallel_for(200, [&](long k) {
      try {
        const Game g = random_instance(50000 + 1000 * f + static_cast<std::uint64_t>(k), spec);
        ok[k] = verify_winner_ne(g, fam.build(g).profile).equilibrium();
      } catch (const std::exception&) {
        ok[k] = 0;
      }
    });
    const long failures = std::count(ok.begin(), ok.end(), 0);
    if (failures) o.pass = false;
    o.detail += std::string(f ? ", " : "") + fam.name + " " + std::to_string(200 - failures) + "/200";
  }
  return o;
}

// Support-mode corpus shared by criteria 6 and 7.
struct SupportCorpus {
  long instances = 0;
  long certified = 0;
  long equilibria = 0;
  long pairwise = 0;
  long poa = 0;
  long uncovered = 0;
};

SupportCorpus support_corpus() {
  CorpusSpec spec;
  spec.instances = 500;
  spec.seed = 60000;
  spec.random_starts = 16;
  SupportCorpus c;
  for (const auto& rec : run_corpus(spec)) {
    ++c.instances;
    if (!rec.error.empty() || !rec.certified) continue;
    ++c.certified;
    for (const auto& [k, v] : rec.fields) {
      if (k == "equilibria") c.equilibria += std::stol(v);
      if (k == "pairwise_ok" && v != "1") ++c.pairwise;
      if (k == "poa_ok" && v != "1") ++c.poa;
      if (k == "uncovered_ok" && v != "1") ++c.uncovered;
    }
  }
  return c;
}

Outcome criterion6(const SupportCorpus& c) {
  Outcome o;
  const Game g = fairness_tight_game();
  const Profile x{Rational(1, 4), Rational(3, 4)};
  const auto ratio = fairness_ratio(g, x);
  o.pass = verify_support_ne(g, x).equilibrium() && ratio && *ratio == Rational(1, 2) &&
           fairness_bound(g) == Rational(1, 2) && c.certified == 500 && c.pairwise == 0;
  o.detail = "tight ratio " + (ratio ? ratio->str() : std::string("none")) + " vs bound " + fairness_bound(g).str() +
             ", " + std::to_string(c.certified) + " instances with certified NE (" + std::to_string(c.equilibria) +
             " distinct), " + std::to_string(c.pairwise) + " pairwise violations";
  return o;
}

Outcome criterion7(const SupportCorpus& c) {
  Outcome o;
  Rational previous(1);
  for (long n = 2; n <= 10; ++n) {
    const AnalysisReport r = poa_report(poa_family_game(n), {poa_family_equilibrium(n)});
    const Rational closed = Rational(n) / Rational(2 * n - 1);
    if (r.welfare_ratio != closed || !(r.welfare_ratio < previous) || !(r.welfare_ratio > Rational(1, 2))) o.pass = false;
    previous = r.welfare_ratio;
  }
  o.detail = "family ratio at n=10 " + previous.str();

  // Widths and breakpoints on the lattice, so the lattice holds an optimum.
  InstanceSpec spec;
  spec.n_max = 3;
  spec.width_set = {Rational(1, 5), Rational(1, 4), Rational(3, 10), Rational(2, 5)};
  spec.granularity = Rational(1, 20);
  const Rational step(1, 20);
  const long count = 60;
  std::vector<char> ok(count);
  parallel_for(count, [&](long k) {
    const Game g = random_instance(70000 + static_cast<std::uint64_t>(k), spec);
    const Rational dp = optimal_welfare(g).value;
    const Rational lattice = oracle::lattice_optimum(g, step);
    ok[k] = lattice <= dp && dp - lattice <= step * g.density().max_value();
  });
  const long dp_failures = std::count(ok.begin(), ok.end(), 0);
  if (dp_failures || c.poa || c.uncovered || c.certified != 500) o.pass = false;
  o.detail += ", " + std::to_string(c.poa) + " PoA and " + std::to_string(c.uncovered) +
              " uncovered violations over " + std::to_string(c.certified) + " instances, DP vs lattice " +
              std::to_string(count - dp_failures) + "/" + std::to_string(count);
  return o;
}

Outcome criterion8() {
  Outcome o;
  const Rational step(1, 1000);
  const long count = 500;
  for (UtilityMode mode : {UtilityMode::kSupport, UtilityMode::kWinner}) {
    InstanceSpec spec;
    spec.mode = mode;
    spec.n_max = 4;
    std::vector<int> disagreements(count), refuted(count);
    parallel_for(count, [&](long k) {
      const Game g = random_instance(80000 + static_cast<std::uint64_t>(k), spec);
      std::mt19937_64 rng(static_cast<std::uint64_t>(k));
      std::vector<Profile> profiles{random_profile(rng, g), stacked_profile(g)};
      if (mode == UtilityMode::kSupport) {
        const EquilibriumSearch found = find_support_equilibria(g, static_cast<std::uint64_t>(k), 2);
        profiles.insert(profiles.end(), found.exact.begin(), found.exact.end());
      } else if (g.agents() == 2 && g.equal_widths()) {
        profiles.push_back(two_agent_ne(g).profile);
      }
      for (const auto& x : profiles) {
        const NeCertificate exact = verify_exact(g, x);
        const NeCertificate grid = grid_verify(g, x, step);
        if (exact.verdict != grid.verdict) ++disagreements[k];
        if (!exact.equilibrium()) ++refuted[k];
      }
    });
    long total = 0, refutations = 0;
    for (long k = 0; k < count; ++k) {
      total += disagreements[k];
      refutations += refuted[k];
    }
    if (total) o.pass = false;
    o.detail += std::string(mode == UtilityMode::kSupport ? "" : ", ") + to_string(mode) + " " +
                std::to_string(total) + " disagreements (" + std::to_string(refutations) + " refutations)";
  }
  return o;
}

}  // namespace

int main() {
  bool all = true;
  const auto report = [&](int number, const char* title, const std::function<Outcome()>& run) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << title << " -- " << o.detail
              << " (" << t.str() << " s)" << std::endl;
  };
  report(1, "worked three-agent example", criterion1);
  report(2, "ordinal potential counterexample", criterion2);
  report(3, "potential identity", criterion3);
  report(4, "epsilon best-response dynamics", criterion4);
  report(5, "winner constructors certified", criterion5);
  SupportCorpus corpus;
  report(6, "fairness bound", [&] {
    corpus = support_corpus();
    return criterion6(corpus);
  });
  report(7, "price of anarchy and uncovered mass", [&] { return criterion7(corpus); });
  report(8, "exact and grid verifiers agree", criterion8);
  return all ? 0 : 1;
}
