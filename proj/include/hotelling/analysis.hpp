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

// Fairness, price of anarchy and uncovered mass of support-setting equilibria,
// the closed-form bounds they must respect, optimal welfare, and seeded
// random instances for corpus experiments.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hotelling/errors.hpp"
#include "hotelling/game.hpp"
#include "hotelling/rational.hpp"
#include "hotelling/support_dynamics.hpp"
#include "hotelling/verifier.hpp"

namespace hotelling {

// min_i s_i / max_i s_i; nullopt when every support is zero.
inline std::optional<Rational> fairness_ratio(const Game& game, const Profile& profile) {
  const std::vector<Rational> s = support_vector(game, profile);
  if (s.empty()) return Rational(1);
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  if (hi->sign() == 0) return std::nullopt;
  return *lo / *hi;
}

// 1 / (2 ceil(w_max / w_min)).
inline Rational fairness_bound(const Game& game) {
  if (game.agents() == 0) throw ConfigError("fairness bound needs at least one agent");
  const auto [lo, hi] = std::minmax_element(game.widths().begin(), game.widths().end());
  return Rational(1) / (Rational(2) * (*hi / *lo).ceil());
}

// s_i >= s_j / (2 ceil(w_j / w_i)) - slack for every ordered pair. Returns the
// first violating pair, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> pairwise_fairness_violation(
    const Game& game, const std::vector<Rational>& supports, const Rational& slack = Rational(0)) {
  for (std::size_t i = 0; i < supports.size(); ++i)
    for (std::size_t j = 0; j < supports.size(); ++j) {
      if (i == j) continue;
      const Rational need = supports[j] / (Rational(2) * (game.width(j) / game.width(i)).ceil());
      if (supports[i] + slack < need) return std::make_pair(i, j);
    }
  return std::nullopt;
}

// 1 / (1 + sum of widths).
inline Rational uncovered_bound(const Game& game) { return Rational(1) / (Rational(1) + game.total_width()); }

inline Rational welfare(const Game& game, const Profile& profile) {
  Rational total;
  for (const auto& s : support_vector(game, profile)) total += s;
  return total;
}

struct OptimalWelfare {
  Rational value;
  Profile profile;
};

namespace detail {

// Maximizes covered mass when the widths cannot tile [0,1]. Some optimum has
// pairwise disjoint attraction intervals grouped into abutting blocks, and
// each block has one end on a density breakpoint (0 and 1 included): sliding
// a block changes its mass linearly until an end meets a breakpoint. Blocks
// are placed left to right; the state is the multiset of unused widths and
// the right end of the last block.
class CoverageSearch {
 public:
  CoverageSearch(const StepFunction& f, std::vector<Rational> distinct, std::vector<int> counts)
      : f_(f), widths_(std::move(distinct)), total_(std::move(counts)) {}

  // Fills blocks_out with (left end, widths taken) in left-to-right order.
  Rational solve(std::vector<std::pair<Rational, std::vector<int>>>& blocks_out) {
    const auto best = best_from(total_, Rational(0));
    if (!best) throw InternalInvariantError("coverage search found no feasible placement");
    // Replay the memoized choices.
    std::vector<int> left = total_;
    Rational r(0);
    while (std::any_of(left.begin(), left.end(), [](int c) { return c > 0; })) {
      const Entry& e = memo_.at({left, r});
      blocks_out.emplace_back(e.lower, e.take);
      for (std::size_t k = 0; k < left.size(); ++k) left[k] -= e.take[k];
      r = e.lower + block_length(e.take);
    }
    return *best;
  }

  const std::vector<Rational>& widths() const { return widths_; }

  Rational block_length(const std::vector<int>& take) const {
    Rational s;
    for (std::size_t k = 0; k < take.size(); ++k) s += Rational(take[k]) * widths_[k];
    return s;
  }

 private:
  struct Entry {
    std::optional<Rational> value;
    std::vector<int> take;
    Rational lower;
  };

  std::optional<Rational> best_from(const std::vector<int>& left, const Rational& r) {
    if (std::all_of(left.begin(), left.end(), [](int c) { return c == 0; })) return Rational(0);
    auto key = std::make_pair(left, r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;

    Entry best;
    std::vector<int> take(left.size(), 0);
    // Enumerate nonempty sub-multisets of the unused widths.
    while (true) {
      std::size_t k = 0;
      while (k < take.size() && take[k] == left[k]) take[k++] = 0;
      if (k == take.size()) break;
      ++take[k];
      const Rational len = block_length(take);
      std::vector<int> rest = left;
      for (std::size_t m = 0; m < rest.size(); ++m) rest[m] -= take[m];
      std::vector<Rational> starts;
      for (const auto& b : f_.breakpoints()) {
        if (b >= r && b + len <= Rational(1)) starts.push_back(b);
        if (b - len >= r) starts.push_back(b - len);
      }
      for (const auto& lo : starts) {
        const auto tail = best_from(rest, lo + len);
        if (!tail) continue;
        Rational v = integrate(f_, lo, lo + len) + *tail;
        if (!best.value || v > *best.value) {
          best.value = std::move(v);
          best.take = take;
          best.lower = lo;
        }
      }
    }
    auto value = best.value;
    memo_.emplace(std::move(key), std::move(best));
    return value;
  }

  const StepFunction& f_;
  std::vector<Rational> widths_;
  std::vector<int> total_;
  std::map<std::pair<std::vector<int>, Rational>, Entry> memo_;
};

}  // namespace detail

// Maximum total support over all profiles. Sharing never changes the sum, so
// this is the largest density mass the union of attraction intervals can cover.
inline OptimalWelfare optimal_welfare(const Game& game) {
  const std::size_t n = game.agents();
  OptimalWelfare out;
  if (n == 0) return out;
  if (game.total_width() >= Rational(1)) {
    // Tile [0,1] left to right; the last interval is pushed back inside.
    Rational r(0);
    for (std::size_t i = 0; i < n; ++i) {
      const Rational lo = min(r, Rational(1) - game.width(i));
      out.profile.push_back(lo + game.width(i) / Rational(2));
      r = max(r, lo + game.width(i));
    }
    out.value = welfare(game, out.profile);
    return out;
  }

  std::vector<Rational> distinct = game.widths();
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> counts(distinct.size(), 0);
  for (const auto& w : game.widths())
    ++counts[static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), w) - distinct.begin())];

  detail::CoverageSearch search(game.f(), distinct, counts);
  std::vector<std::pair<Rational, std::vector<int>>> blocks;
  const Rational best = search.solve(blocks);

  // Hand out agents of each width to the blocks; within a block they abut.
  std::vector<std::vector<std::size_t>> pool(distinct.size());
  for (std::size_t i = 0; i < n; ++i)
    pool[static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), game.width(i)) -
                                  distinct.begin())]
        .push_back(i);
  out.profile.assign(n, Rational(0));
  std::vector<std::size_t> next(distinct.size(), 0);
  for (const auto& [lower, take] : blocks) {
    Rational cursor = lower;
    for (std::size_t k = 0; k < take.size(); ++k)
      for (int t = 0; t < take[k]; ++t) {
        out.profile[pool[k][next[k]++]] = cursor + distinct[k] / Rational(2);
        cursor += distinct[k];
      }
  }
  out.value = welfare(game, out.profile);
  if (out.value != best)
    throw InternalInvariantError("optimal_welfare: rebuilt profile covers " + out.value.str() + ", search found " +
                                 best.str());
  return out;
}

struct AnalysisReport {
  Rational fairness_ratio;
  Rational fairness_bound;
  Rational welfare;
  Rational optimal_welfare;
  Rational welfare_ratio;
  Rational uncovered;
  Rational uncovered_bound;
  bool fairness_ok = true;
  bool pairwise_ok = true;
  bool poa_ok = true;
  bool uncovered_ok = true;
  std::size_t worst_index = 0;
  Profile optimal_profile;

  bool all_ok() const { return fairness_ok && pairwise_ok && poa_ok && uncovered_ok; }
};

// A supplied profile was not an equilibrium at the stated tolerance.
struct NeRejected : std::invalid_argument {
  NeRejected(std::size_t idx, NeCertificate c)
      : std::invalid_argument("profile " + std::to_string(idx) + " is not a support equilibrium"),
        index(idx),
        certificate(std::move(c)) {}
  std::size_t index;
  NeCertificate certificate;
};

// Evaluates the worst supplied equilibrium against optimal welfare and checks
// the fairness, price-of-anarchy, and uncovered-mass bounds. With a positive
// tolerance (epsilon-equilibria) each bound is relaxed by the matching slack.
inline AnalysisReport poa_report(const Game& game, const std::vector<Profile>& equilibria,
                                 const Rational& tolerance = Rational(0)) {
  if (equilibria.empty()) throw ConfigError("poa_report needs at least one equilibrium");
  if (game.agents() == 0) throw ConfigError("poa_report needs at least one agent");
  for (std::size_t k = 0; k < equilibria.size(); ++k) {
    NeCertificate cert = verify_support_ne(game, equilibria[k], tolerance);
    if (!cert.equilibrium()) throw NeRejected(k, std::move(cert));
  }
  AnalysisReport r;
  const OptimalWelfare opt = optimal_welfare(game);
  r.optimal_welfare = opt.value;
  r.optimal_profile = opt.profile;
  r.fairness_bound = fairness_bound(game);
  r.uncovered_bound = uncovered_bound(game);
  const Rational n(static_cast<long>(game.agents()));

  bool first = true;
  for (std::size_t k = 0; k < equilibria.size(); ++k) {
    const std::vector<Rational> s = support_vector(game, equilibria[k]);
    Rational total;
    for (const auto& v : s) total += v;
    if (first || total < r.welfare) {
      r.welfare = total;
      r.worst_index = k;
    }
    const auto ratio = fairness_ratio(game, equilibria[k]);
    if (ratio && (first || *ratio < r.fairness_ratio)) r.fairness_ratio = *ratio;
    if (pairwise_fairness_violation(game, s, tolerance)) r.pairwise_ok = false;
    first = false;
  }
  r.welfare_ratio = r.welfare / r.optimal_welfare;
  r.uncovered = Rational(1) - r.welfare;
  r.fairness_ok = r.pairwise_ok && (tolerance.sign() > 0 || r.fairness_ratio >= r.fairness_bound);
  r.poa_ok = Rational(2) * r.welfare + n * tolerance >= r.optimal_welfare;
  r.uncovered_ok = r.uncovered <= r.uncovered_bound + n * tolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Random instances.

struct InstanceSpec {
  long n_min = 1;
  long n_max = 6;
  std::vector<Rational> width_set{Rational(1, 5), Rational(1, 4), Rational(1, 3), Rational(1, 2)};
  bool equal_widths = false;  // one width drawn for all agents
  long pieces_min = 1;
  long pieces_max = 5;
  Rational granularity{1, 100};
  UtilityMode mode = UtilityMode::kSupport;
};

// Draws in [0, bound) from the raw 64-bit stream, so results depend only on
// the seed and not on the standard library's distribution implementations.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do v = rng(); while (v >= limit);
  return v % bound;
}

inline long draw_between(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline void validate_spec(const InstanceSpec& spec) {
  if (spec.n_min < 1 || spec.n_max < spec.n_min) throw ConfigError("agent count range must satisfy 1 <= min <= max");
  if (spec.width_set.empty()) throw ConfigError("width set is empty");
  for (const auto& w : spec.width_set)
    if (w.sign() <= 0 || w > Rational(1)) throw ConfigError("width " + w.str() + " outside (0,1]");
  if (spec.pieces_min < 1 || spec.pieces_max < spec.pieces_min) throw ConfigError("piece count range must satisfy 1 <= min <= max");
  const Rational inv = Rational(1) / spec.granularity;
  if (spec.granularity.sign() <= 0 || !inv.is_integer())
    throw ConfigError("granularity must be 1/G for a positive integer G");
  if (Rational(spec.pieces_max) > inv) throw ConfigError("more pieces than granularity cells");
}

// Deterministic from (seed, spec): breakpoints and raw values are multiples of
// the granularity; the density is then rescaled to unit mass.
inline Game random_instance(std::uint64_t seed, const InstanceSpec& spec) {
  validate_spec(spec);
  std::mt19937_64 rng(seed);
  const long cells = (Rational(1) / spec.granularity).to_long();
  const long n = draw_between(rng, spec.n_min, spec.n_max);
  std::vector<Rational> widths;
  const auto pick_width = [&] { return spec.width_set[draw_below(rng, spec.width_set.size())]; };
  const Rational common = pick_width();
  for (long i = 0; i < n; ++i) widths.push_back(spec.equal_widths ? common : pick_width());

  const long pieces = draw_between(rng, spec.pieces_min, spec.pieces_max);
  std::vector<long> cuts;
  while (static_cast<long>(cuts.size()) < pieces - 1) {
    const long c = draw_between(rng, 1, cells - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> b{Rational(0)};
  for (long c : cuts) b.push_back(Rational(c) * spec.granularity);
  b.emplace_back(1);
  std::vector<Rational> v;
  bool positive = false;
  while (!positive) {
    v.clear();
    for (long k = 0; k < pieces; ++k) {
      // Zero-density pieces appear with probability about 1/8.
      const long units = draw_below(rng, 8) == 0 ? 0 : draw_between(rng, 1, cells);
      v.push_back(Rational(units) * spec.granularity);
      positive = positive || units > 0;
    }
  }
  return Game(Density(StepFunction(std::move(b), std::move(v))), std::move(widths), spec.mode);
}

// Uniformly drawn profile on a 1/1000 lattice of each feasible range.
inline Profile random_profile(std::mt19937_64& rng, const Game& game) {
  Profile p;
  for (std::size_t i = 0; i < game.agents(); ++i) {
    const Interval li = game.feasible(i);
    p.push_back(li.lower + (li.upper - li.lower) * Rational(draw_between(rng, 0, 1000), 1000));
  }
  return p;
}

// All agents at the left end of their ranges, and agents spread evenly.
inline Profile stacked_profile(const Game& game) {
  Profile p;
  for (std::size_t i = 0; i < game.agents(); ++i) p.push_back(game.feasible(i).lower);
  return p;
}

inline Profile spread_profile(const Game& game) {
  Profile p;
  const long n = static_cast<long>(game.agents());
  for (std::size_t i = 0; i < game.agents(); ++i) {
    const Interval li = game.feasible(i);
    p.push_back(li.lower + (li.upper - li.lower) * Rational(2 * static_cast<long>(i) + 1, 2 * n));
  }
  return p;
}

struct EquilibriumSearch {
  std::vector<Profile> exact;       // certified with tolerance 0
  std::vector<Profile> approximate;  // certified only at the dynamics epsilon
  long max_moves = 0;
};

// Multi-start equilibrium search: seeded random starts plus the stacked and
// evenly spread starts. Each run uses epsilon dynamics followed by a polishing
// pass at a much smaller epsilon; outputs are deduplicated.
inline EquilibriumSearch find_support_equilibria(const Game& game, std::uint64_t seed, int random_starts = 32,
                                                 const DynamicsOptions& opts = {}) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Profile> starts{stacked_profile(game), spread_profile(game)};
  for (int k = 0; k < random_starts; ++k) starts.push_back(random_profile(rng, game));

  EquilibriumSearch out;
  DynamicsOptions polish = opts;
  polish.epsilon = Rational::from_mpq(mpq_class(1, mpz_class("1000000000000000000000000000000")));
  for (const auto& s : starts) {
    DynamicsResult run = run_dynamics(game, s, opts);
    long moves = static_cast<long>(run.trace.rounds.size());
    if (run.trace.terminated) {
      DynamicsResult fine = run_dynamics(game, run.profile, polish);
      moves += static_cast<long>(fine.trace.rounds.size());
      if (fine.trace.terminated) run.profile = std::move(fine.profile);
    }
    out.max_moves = std::max(out.max_moves, moves);
    if (!run.trace.terminated) continue;
    auto& bucket = verify_support_ne(game, run.profile).equilibrium() ? out.exact : out.approximate;
    if (std::find(bucket.begin(), bucket.end(), run.profile) == bucket.end()) bucket.push_back(std::move(run.profile));
  }
  return out;
}

// The n-agent family whose all-stacked equilibrium covers only n/(2n-1) of the mass.
inline Game poa_family_game(long n) {
  if (n < 1) throw ConfigError("family size must be positive");
  const Rational den(2 * n - 1);
  return Game(Density::from_pieces({{Rational(1, n), Rational(n * n) / den}, {Rational(1), Rational(n) / den}}),
              std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n)), UtilityMode::kSupport);
}

inline Profile poa_family_equilibrium(long n) {
  return Profile(static_cast<std::size_t>(n), Rational(1, 2 * n));
}

// Two agents of width 1/2 on a 2/3 | 4/3 density: supports 1/3 and 2/3.
inline Game fairness_tight_game() {
  return Game(Density::from_pieces({{Rational(1, 2), Rational(2, 3)}, {Rational(1), Rational(4, 3)}}),
              {Rational(1, 2), Rational(1, 2)}, UtilityMode::kSupport);
}

}  // namespace hotelling
