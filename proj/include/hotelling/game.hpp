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

// The attraction game: a client density on [0,1], agents with attraction
// widths, and the support / winner utilities derived from the congestion
// of attraction intervals.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hotelling/errors.hpp"
#include "hotelling/rational.hpp"
#include "hotelling/step_function.hpp"

namespace hotelling {

enum class UtilityMode { kSupport, kWinner };

inline std::string to_string(UtilityMode m) { return m == UtilityMode::kSupport ? "support" : "winner"; }

inline UtilityMode parse_mode(const std::string& s) {
  if (s == "support") return UtilityMode::kSupport;
  if (s == "winner") return UtilityMode::kWinner;
  throw ParseError("unknown utility mode \"" + s + "\" (expected support or winner)");
}

// Nonnegative client density with total mass exactly 1.
class Density {
 public:
  // Rescales to unit mass when needed; rescaled() reports whether it did.
  explicit Density(StepFunction step) : step_(std::move(step)) {
    for (const auto& v : step_.values())
      if (v.sign() < 0) throw DomainError("density value " + v.str() + " is negative");
    const Rational mass = step_.total();
    if (mass.sign() == 0) throw DomainError("density has zero total mass");
    if (mass != Rational(1)) {
      rescaled_ = true;
      step_ = step_.map([&](const Rational& v) { return v / mass; });
    }
    step_ = step_.normalized();
  }

  static Density uniform() { return Density(StepFunction::constant(Rational(1))); }

  // Pieces given as (upto, value) pairs; the last upto must be 1.
  static Density from_pieces(const std::vector<std::pair<Rational, Rational>>& pieces) {
    std::vector<Rational> b{Rational(0)};
    std::vector<Rational> v;
    for (const auto& [upto, value] : pieces) {
      b.push_back(upto);
      v.push_back(value);
    }
    return Density(StepFunction(std::move(b), std::move(v)));
  }

  const StepFunction& step() const { return step_; }
  bool rescaled() const { return rescaled_; }
  Rational mass(const Rational& lo, const Rational& hi) const { return integrate(step_, lo, hi); }
  Rational max_value() const { return *std::max_element(step_.values().begin(), step_.values().end()); }

 private:
  StepFunction step_;
  bool rescaled_ = false;
};

using Profile = std::vector<Rational>;

class Game {
 public:
  Game(Density density, std::vector<Rational> widths, UtilityMode mode)
      : density_(std::move(density)), widths_(std::move(widths)), mode_(mode) {
    for (std::size_t i = 0; i < widths_.size(); ++i)
      if (widths_[i].sign() <= 0 || widths_[i] > Rational(1))
        throw ConstraintError("agent " + std::to_string(i + 1) + " width " + widths_[i].str() + " outside (0,1]");
  }

  const Density& density() const { return density_; }
  const StepFunction& f() const { return density_.step(); }
  const std::vector<Rational>& widths() const { return widths_; }
  const Rational& width(std::size_t i) const { return widths_[i]; }
  std::size_t agents() const { return widths_.size(); }
  UtilityMode mode() const { return mode_; }

  Game with_mode(UtilityMode m) const { return Game(density_, widths_, m); }

  // Feasible locations L_i = [w_i/2, 1 - w_i/2].
  Interval feasible(std::size_t i) const {
    const Rational half = widths_[i] / Rational(2);
    return {half, Rational(1) - half};
  }

  Interval attraction(std::size_t i, const Rational& x) const {
    const Rational half = widths_[i] / Rational(2);
    return {x - half, x + half};
  }

  bool equal_widths() const {
    return std::all_of(widths_.begin(), widths_.end(), [&](const Rational& w) { return w == widths_.front(); });
  }

  Rational total_width() const {
    Rational s;
    for (const auto& w : widths_) s += w;
    return s;
  }

  void validate(const Profile& profile) const {
    if (profile.size() != widths_.size())
      throw ConstraintError("profile has " + std::to_string(profile.size()) + " locations for " +
                            std::to_string(widths_.size()) + " agents");
    for (std::size_t i = 0; i < profile.size(); ++i)
      if (!feasible(i).contains(profile[i]))
        throw ConstraintError("agent " + std::to_string(i + 1) + " location " + profile[i].str() +
                              " outside [" + feasible(i).lower.str() + ", " + feasible(i).upper.str() + "]");
  }

 private:
  Density density_;
  std::vector<Rational> widths_;
  UtilityMode mode_;
};

namespace detail {

// Congestion of an arbitrary list of intervals inside [0,1].
inline StepFunction congestion_of(const std::vector<Interval>& intervals) {
  std::vector<Rational> grid{Rational(0), Rational(1)};
  for (const auto& r : intervals) {
    grid.push_back(r.lower);
    grid.push_back(r.upper);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<Rational> counts;
  counts.reserve(grid.size() - 1);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    long c = 0;
    for (const auto& r : intervals)
      if (r.lower <= grid[k] && grid[k + 1] <= r.upper) ++c;
    counts.emplace_back(c);
  }
  return StepFunction(std::move(grid), std::move(counts));
}

inline std::vector<Interval> attraction_intervals(const Game& game, const Profile& profile,
                                                  std::size_t skip = static_cast<std::size_t>(-1)) {
  std::vector<Interval> out;
  out.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i)
    if (i != skip) out.push_back(game.attraction(i, profile[i]));
  return out;
}

// f / c, with zero wherever nobody covers the point.
inline StepFunction shared_density(const StepFunction& f, const StepFunction& congestion) {
  return combine(f, congestion, [](const Rational& fv, const Rational& c) {
    return c.sign() == 0 ? Rational(0) : fv / c;
  });
}

inline std::vector<Rational> supports_unchecked(const Game& game, const Profile& profile) {
  const std::vector<Interval> rs = attraction_intervals(game, profile);
  const StepFunction share = shared_density(game.f(), congestion_of(rs));
  std::vector<Rational> s;
  s.reserve(rs.size());
  for (const auto& r : rs) s.push_back(integrate(share, r.lower, r.upper));
  return s;
}

// Indices attaining the maximum support.
inline std::vector<std::size_t> winners_of(const std::vector<Rational>& supports) {
  std::vector<std::size_t> w;
  if (supports.empty()) return w;
  const Rational best = *std::max_element(supports.begin(), supports.end());
  for (std::size_t i = 0; i < supports.size(); ++i)
    if (supports[i] == best) w.push_back(i);
  return w;
}

}  // namespace detail

// c(x): number of attraction intervals covering x. Breakpoints are exactly
// the interval endpoints plus 0 and 1; adjacent pieces are not merged.
inline StepFunction congestion(const Game& game, const Profile& profile) {
  game.validate(profile);
  return detail::congestion_of(detail::attraction_intervals(game, profile));
}

// s_i = integral over R_i of f / c.
inline std::vector<Rational> support_vector(const Game& game, const Profile& profile) {
  game.validate(profile);
  return detail::supports_unchecked(game, profile);
}

struct UtilityReport {
  std::vector<Rational> supports;
  std::vector<std::size_t> winner_set;  // zero-based agent indices
  std::vector<Rational> utilities;
  Rational covered_mass;
  UtilityMode mode = UtilityMode::kSupport;
};

// Winner utility of every agent: 1/|W| for the maximal-support agents.
inline std::vector<Rational> winner_utilities(const std::vector<Rational>& supports) {
  std::vector<Rational> u(supports.size());
  const auto w = detail::winners_of(supports);
  for (std::size_t i : w) u[i] = Rational(1, static_cast<long>(w.size()));
  return u;
}

inline UtilityReport utility_report(const Game& game, const Profile& profile) {
  UtilityReport r;
  r.mode = game.mode();
  r.supports = support_vector(game, profile);
  r.winner_set = detail::winners_of(r.supports);
  for (const auto& s : r.supports) r.covered_mass += s;
  r.utilities = game.mode() == UtilityMode::kSupport ? r.supports : winner_utilities(r.supports);
  return r;
}

// Phi = integral over [0,1] of f(x) * H_{c(x)}, where H_k is the k-th harmonic number.
inline Rational potential(const Game& game, const Profile& profile) {
  const StepFunction c = congestion(game, profile);
  const StepFunction weighted = combine(game.f(), c, [](const Rational& fv, const Rational& k) {
    return fv * harmonic(k.to_long());
  });
  return weighted.total();
}

}  // namespace hotelling
