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

// Constructive pure equilibria for the winner utility setting with equal
// widths: two agents, three agents, width one half with any number of
// agents, and widths above one half by reduction to width one half.
//
// Every constructor submits its profile to the exact winner verifier before
// returning; a profile that fails certification raises InternalInvariantError.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hotelling/errors.hpp"
#include "hotelling/game.hpp"
#include "hotelling/piecewise_linear.hpp"
#include "hotelling/rational.hpp"
#include "hotelling/verifier.hpp"

namespace hotelling {

enum class CaseTag {
  kTwoAgent,
  kA1Case1,
  kA1Case2,
  kA1Case3,
  kA1Case4,
  kA1Case5,
  kA2Split,
  kA2Stack,
  kA2Flank,
  kReduced,
};

inline std::string to_string(CaseTag t) {
  switch (t) {
    case CaseTag::kTwoAgent: return "TWO-AGENT";
    case CaseTag::kA1Case1: return "A1-CASE1";
    case CaseTag::kA1Case2: return "A1-CASE2";
    case CaseTag::kA1Case3: return "A1-CASE3";
    case CaseTag::kA1Case4: return "A1-CASE4";
    case CaseTag::kA1Case5: return "A1-CASE5";
    case CaseTag::kA2Split: return "A2-SPLIT";
    case CaseTag::kA2Stack: return "A2-STACK";
    case CaseTag::kA2Flank: return "A2-FLANK";
    case CaseTag::kReduced: return "REDUCED";
  }
  return "?";
}

// How a prospective entrant's share of a point covered by c agents is taken.
inline constexpr const char* kEntrantShareRule = "f/(c+1)";

struct ConstructionResult {
  Profile profile;
  CaseTag case_tag = CaseTag::kTwoAgent;
  std::optional<CaseTag> inner_tag;  // the width-1/2 branch behind a REDUCED result
  std::vector<std::pair<std::string, Rational>> intermediate;
  std::string entrant_share_rule = kEntrantShareRule;
  bool degenerate = false;
  NeCertificate certificate;

  const Rational* named(const std::string& key) const {
    for (const auto& [k, v] : intermediate)
      if (k == key) return &v;
    return nullptr;
  }
};

namespace detail {

inline void require_winner_equal_widths(const Game& game, const char* who) {
  if (game.mode() != UtilityMode::kWinner) throw ModeError(std::string(who) + " requires the winner setting");
  if (!game.equal_widths()) throw UnsupportedConfiguration(std::string(who) + " requires equal widths");
}

inline std::string describe(const Game& game, const Profile& profile) {
  std::ostringstream os;
  os << "density breakpoints {";
  for (const auto& b : game.f().breakpoints()) os << ' ' << b;
  os << " } values {";
  for (const auto& v : game.f().values()) os << ' ' << v;
  os << " } widths {";
  for (const auto& w : game.widths()) os << ' ' << w;
  os << " } profile {";
  for (const auto& x : profile) os << ' ' << x;
  os << " }";
  return os.str();
}

inline ConstructionResult certify(const Game& game, ConstructionResult r) {
  r.certificate = verify_winner_ne(game, r.profile);
  if (!r.certificate.equilibrium()) {
    const Deviation& d = *r.certificate.best_deviation;
    throw InternalInvariantError("construction " + to_string(r.case_tag) + " failed certification: agent " +
                                 std::to_string(d.agent + 1) + " gains by moving to " + d.location.str() + "; " +
                                 describe(game, r.profile));
  }
  return r;
}

// f / (c + 1) where c counts the given intervals.
inline StepFunction entrant_share(const StepFunction& f, const std::vector<Interval>& occupied) {
  const StepFunction c = congestion_of(occupied);
  return combine(f, c, [](const Rational& fv, const Rational& k) { return fv / (k + Rational(1)); });
}

// Left end of the run of zero-density pieces that ends at e (e itself if the
// density is positive just left of e).
inline Rational zero_run_start(const StepFunction& f, const Rational& e) {
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  // Piece whose half-open span (b_k, b_{k+1}] contains e.
  std::size_t k = 0;
  while (k + 1 < b.size() && b[k + 1] < e) ++k;
  if (e == Rational(0)) return e;
  Rational start = e;
  while (true) {
    if (v[k].sign() != 0) return start;
    start = b[k];
    if (k == 0) return start;
    --k;
  }
}

// Greedy left-to-right choice of up to `limit` points of the level set whose
// pairwise window overlaps carry zero density mass.
inline std::vector<Rational> disjoint_achievers(const StepFunction& f, const std::vector<Interval>& level,
                                                const Rational& width, std::size_t limit) {
  std::vector<Rational> picks;
  if (level.empty()) return picks;
  const Rational half = width / Rational(2);
  picks.push_back(level.front().lower);
  while (picks.size() < limit) {
    const Rational& prev = picks.back();
    const Rational bound = max(prev, zero_run_start(f, prev + half) + half);
    std::optional<Rational> next;
    for (const auto& iv : level) {
      if (iv.upper < bound) continue;
      Rational p = max(iv.lower, bound);
      if (p == prev) continue;  // unreachable: window mass is positive
      next = std::move(p);
      break;
    }
    if (!next) break;
    picks.push_back(std::move(*next));
  }
  return picks;
}

}  // namespace detail

// Both agents at the leftmost maximizer of the window mass.
inline ConstructionResult two_agent_ne(const Game& game) {
  detail::require_winner_equal_widths(game, "two_agent_ne");
  if (game.agents() != 2) throw UnsupportedConfiguration("two_agent_ne requires exactly 2 agents");
  const Extremum best = argmax(window_objective(game.f(), game.width(0)));
  ConstructionResult r;
  r.case_tag = CaseTag::kTwoAgent;
  r.profile = {best.location, best.location};
  r.intermediate = {{"u1", best.value}, {"x1", best.location}};
  return detail::certify(game, std::move(r));
}

// Three agents with equal widths.
inline ConstructionResult algorithm1(const Game& game) {
  detail::require_winner_equal_widths(game, "algorithm1");
  if (game.agents() != 3) throw UnsupportedConfiguration("algorithm1 requires exactly 3 agents");
  const Rational& w = game.width(0);
  const Rational half = w / Rational(2);

  const PiecewiseLinear mass = window_objective(game.f(), w);
  const Rational u1 = argmax(mass).value;
  const std::vector<Interval> achievers = level_set(mass, u1);
  const std::vector<Rational> picks = detail::disjoint_achievers(game.f(), achievers, w, 3);

  ConstructionResult r;
  r.intermediate = {{"u1", u1}};
  if (picks.size() >= 3) {
    r.case_tag = CaseTag::kA1Case1;
    r.profile = {picks[0], picks[1], picks[2]};
    return detail::certify(game, std::move(r));
  }
  if (picks.size() == 2) {
    r.case_tag = CaseTag::kA1Case2;
    r.profile = {picks[0], picks[1], picks[1]};
    return detail::certify(game, std::move(r));
  }

  const Rational x1 = achievers.front().lower;
  const PiecewiseLinear second = window_objective(detail::entrant_share(game.f(), {{x1 - half, x1 + half}}), w);
  const Rational u2 = argmax(second).value;
  const std::vector<Interval> y = level_set(second, u2);
  if (y.empty()) throw InternalInvariantError("algorithm1: empty maximizer set for agent 2; " + detail::describe(game, {x1}));
  r.intermediate.emplace_back("x1", x1);
  r.intermediate.emplace_back("u2", u2);

  const bool at_x1 = std::any_of(y.begin(), y.end(), [&](const Interval& iv) { return iv.contains(x1); });
  if (at_x1) {
    r.case_tag = CaseTag::kA1Case3;
    r.profile = {x1, x1, x1};
    return detail::certify(game, std::move(r));
  }

  std::optional<Rational> left, right;
  for (const auto& iv : y) {
    if (iv.upper < x1) left = iv.upper;
    if (iv.lower > x1 && !right) right = iv.lower;
  }
  if (left && right) {
    r.case_tag = CaseTag::kA1Case4;
    r.profile = {x1, *left, *right};
    return detail::certify(game, std::move(r));
  }

  const Rational t2 = y.front().lower, t3 = y.back().upper;
  r.case_tag = CaseTag::kA1Case5;
  r.intermediate.emplace_back("t2", t2);
  r.intermediate.emplace_back("t3", t3);
  r.profile = t2 < x1 ? Profile{x1, t3, t2} : Profile{x1, t2, t3};
  return detail::certify(game, std::move(r));
}

namespace detail {

// x -> P(x + shift) for x in [lo, hi], P the antiderivative of f.
inline PiecewiseLinear shifted_cdf(const StepFunction& f, const Rational& shift, const Rational& lo, const Rational& hi) {
  std::vector<Rational> xs{lo, hi};
  for (const auto& b : f.breakpoints()) {
    Rational x = b - shift;
    if (lo < x && x < hi) xs.push_back(std::move(x));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rational> ys;
  for (const auto& x : xs) ys.push_back(f.antiderivative(x + shift));
  return PiecewiseLinear::from_nodes(xs, ys);
}

inline PiecewiseLinear scaled(const PiecewiseLinear& p, const Rational& k) {
  std::vector<Rational> ys = p.node_values();
  for (auto& y : ys) y *= k;
  return PiecewiseLinear::from_nodes(p.breakpoints(), ys);
}

}  // namespace detail

// Left and right largest entrant utilities when `stacked` agents sit at a
// common location x (width 1/2): ll(x) maximizes over entrant locations
// z <= x, rl(x) over z >= x. With alpha = m/(m+1) and P the antiderivative
// of f, every window overlaps the stack, which gives
//   ll(x) = max_{z<=x} [(1-alpha) P(z+1/4) - P(z-1/4)] + alpha P(x-1/4)
//   rl(x) = max_{z>=x} [P(z+1/4) - (1-alpha) P(z-1/4)] - alpha P(x+1/4).
struct FlankCurves {
  PiecewiseLinear left;
  PiecewiseLinear right;
};

inline FlankCurves flank_curves(const StepFunction& f, long stacked) {
  const Rational q(1, 4), lo(1, 4), hi(3, 4);
  const Rational alpha(stacked, stacked + 1);
  const Rational keep = Rational(1) - alpha;
  const PiecewiseLinear upper = detail::shifted_cdf(f, q, lo, hi);   // P(z + 1/4)
  const PiecewiseLinear lower = detail::shifted_cdf(f, -q, lo, hi);  // P(z - 1/4)
  const PiecewiseLinear phi = detail::scaled(upper, keep) - lower;
  const PiecewiseLinear psi = upper - detail::scaled(lower, keep);
  return {running_max(phi) + detail::scaled(lower, alpha), suffix_max(psi) - detail::scaled(upper, alpha)};
}

// Width exactly 1/2, any number of agents >= 2.
inline ConstructionResult algorithm2(const Game& game) {
  detail::require_winner_equal_widths(game, "algorithm2");
  const Rational half_width(1, 2), q(1, 4);
  if (game.agents() < 2) throw UnsupportedConfiguration("algorithm2 requires at least 2 agents");
  if (game.width(0) != half_width)
    throw UnsupportedConfiguration("algorithm2 requires width 1/2 (use reduce_width for wider agents)");
  const std::size_t k = game.agents();
  const StepFunction& f = game.f();

  const PiecewiseLinear mass = window_objective(f, half_width);
  const Extremum top = argmax(mass);
  const Rational& u1 = top.value;
  ConstructionResult r;
  r.intermediate = {{"u1", u1}};

  if (integrate(f, 0, half_width) == u1 && integrate(f, half_width, 1) == u1) {
    r.case_tag = CaseTag::kA2Split;
    const std::size_t left = (k + 1) / 2;
    for (std::size_t i = 0; i < k; ++i) r.profile.push_back(i < left ? q : Rational(3, 4));
    return detail::certify(game, std::move(r));
  }

  const Rational x1 = top.location;
  r.intermediate.emplace_back("x1", x1);
  // t: how many agents stacked one by one at x1 still find x1 optimal.
  long t = 1;
  while (t < static_cast<long>(k)) {
    std::vector<Interval> stack(static_cast<std::size_t>(t), Interval{x1 - q, x1 + q});
    const PiecewiseLinear entrant = window_objective(detail::entrant_share(f, stack), half_width);
    if (entrant(x1) != argmax(entrant).value) break;
    ++t;
  }
  r.intermediate.emplace_back("t", Rational(t));

  if (static_cast<long>(k) <= t + 1) {
    r.case_tag = CaseTag::kA2Stack;
    r.profile.assign(k, x1);
    return detail::certify(game, std::move(r));
  }

  const long stacked = static_cast<long>(k) - 2;
  const FlankCurves curves = flank_curves(f, stacked);
  const PiecewiseLinear gap = curves.left - curves.right;  // nondecreasing
  Rational xs;
  if (auto zeros = level_set(gap, Rational(0)); !zeros.empty()) {
    xs = zeros.front().lower;
  } else {
    // No exact touch: take the leftmost point where ll >= rl.
    xs = gap.upper();
    for (const auto& x : gap.breakpoints())
      if (gap(x).sign() >= 0) {
        xs = x;
        break;
      }
  }

  std::vector<Interval> stack(static_cast<std::size_t>(stacked), Interval{xs - q, xs + q});
  const PiecewiseLinear entrant = window_objective(detail::entrant_share(f, stack), half_width);
  const Extremum left = argmax_rightmost(entrant.restrict(q, xs));
  const Extremum right = argmax(entrant.restrict(xs, Rational(3, 4)));
  if (left.value != curves.left(xs) || right.value != curves.right(xs))
    throw InternalInvariantError("algorithm2: flank curves disagree with the entrant objective at x* = " + xs.str() +
                                 "; " + detail::describe(game, {}));

  r.case_tag = CaseTag::kA2Flank;
  r.intermediate.emplace_back("x*", xs);
  r.intermediate.emplace_back("ll(x*)", left.value);
  r.intermediate.emplace_back("rl(x*)", right.value);
  r.intermediate.emplace_back("x_l", left.location);
  r.intermediate.emplace_back("x_r", right.location);
  r.profile.assign(k - 2, xs);
  r.profile.push_back(left.location);
  r.profile.push_back(right.location);
  return detail::certify(game, std::move(r));
}

// A width-w game (1/2 <= w < 1) rewritten as a width-1/2 game by cutting out
// the middle (1-w, w), which every attraction interval always covers.
struct WidthReduction {
  Game reduced;
  Rational width;
  Rational outer_mass;  // density mass outside (1-w, w)
  bool degenerate = false;

  // Original location -> reduced location.
  Rational forward(const Rational& x) const {
    return (x - width + Rational(1, 2)) / (Rational(2) - Rational(2) * width);
  }
  // Reduced location -> original location.
  Rational inverse(const Rational& y) const {
    return (Rational(2) - Rational(2) * width) * y + width - Rational(1, 2);
  }
};

inline WidthReduction reduce_width(const Game& game) {
  detail::require_winner_equal_widths(game, "reduce_width");
  if (game.agents() == 0) throw UnsupportedConfiguration("reduce_width requires at least one agent");
  const Rational w = game.width(0);
  const Rational half(1, 2);
  if (w < half || w >= Rational(1)) throw UnsupportedConfiguration("reduce_width requires 1/2 <= w < 1, got " + w.str());
  const StepFunction& f = game.f();
  const Rational cut_lo = Rational(1) - w;
  const Rational outer = integrate(f, 0, cut_lo) + integrate(f, w, 1);
  const Rational scale = Rational(2) - Rational(2) * w;

  if (outer.sign() == 0) {
    return {Game(Density::uniform(), std::vector<Rational>(game.agents(), half), UtilityMode::kWinner), w, outer, true};
  }

  // Reduced coordinate y maps to y*(2-2w) on the left half and y*(2-2w)+2w-1 on the right.
  std::vector<Rational> grid{Rational(0), half, Rational(1)};
  for (const auto& b : f.breakpoints()) {
    if (Rational(0) < b && b < cut_lo) grid.push_back(b / scale);
    if (w < b && b < Rational(1)) grid.push_back((b - Rational(2) * w + Rational(1)) / scale);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<Rational> values;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const Rational mid = (grid[k] + grid[k + 1]) / Rational(2);
    const Rational orig = mid <= half ? mid * scale : mid * scale + Rational(2) * w - Rational(1);
    values.push_back(f.value_at(orig) * scale / outer);
  }
  Game reduced(Density(StepFunction(std::move(grid), std::move(values))), std::vector<Rational>(game.agents(), half),
               UtilityMode::kWinner);
  return {std::move(reduced), w, outer, false};
}

// Equilibrium for equal widths w >= 1/2: solve the reduced width-1/2 game and
// map the locations back.
inline ConstructionResult reduced_ne(const Game& game) {
  const WidthReduction red = reduce_width(game);
  ConstructionResult r;
  r.case_tag = CaseTag::kReduced;
  r.intermediate = {{"w", red.width}, {"outer_mass", red.outer_mass}};
  if (red.degenerate) {
    r.degenerate = true;
    r.profile.assign(game.agents(), Rational(1, 2));
    return detail::certify(game, std::move(r));
  }
  if (game.agents() < 2) {
    r.profile = {red.inverse(argmax(window_objective(red.reduced.f(), Rational(1, 2))).location)};
    return detail::certify(game, std::move(r));
  }
  const ConstructionResult inner = algorithm2(red.reduced);
  r.inner_tag = inner.case_tag;
  for (const auto& [k, v] : inner.intermediate) r.intermediate.emplace_back("reduced." + k, v);
  for (const auto& y : inner.profile) r.profile.push_back(red.inverse(y));
  return detail::certify(game, std::move(r));
}

}  // namespace hotelling
