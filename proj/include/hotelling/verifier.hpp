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

// Nash-equilibrium certification.
//
// Exact support-mode checks compare each agent's utility with its exact best
// response. Exact winner-mode checks follow every agent's support as a
// piecewise-linear function of one deviator's location and split the
// deviator's range at all kinks and all pairwise crossings, so the winner set
// is constant on each open cell; cells and their endpoints are all examined.
// grid_verify is an independent lattice oracle for cross-checking.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hotelling/errors.hpp"
#include "hotelling/game.hpp"
#include "hotelling/piecewise_linear.hpp"
#include "hotelling/rational.hpp"
#include "hotelling/support_dynamics.hpp"

namespace hotelling {

enum class Verdict { kEquilibrium, kNotEquilibrium };
enum class VerifyMethod { kExact, kGrid };

inline std::string to_string(Verdict v) { return v == Verdict::kEquilibrium ? "equilibrium" : "not-equilibrium"; }
inline std::string to_string(VerifyMethod m) { return m == VerifyMethod::kExact ? "exact" : "grid"; }

struct Deviation {
  std::size_t agent = 0;
  Rational location;
  Rational old_utility;
  Rational new_utility;
  Rational gain() const { return new_utility - old_utility; }
};

struct NeCertificate {
  Verdict verdict = Verdict::kEquilibrium;
  UtilityMode mode = UtilityMode::kSupport;
  VerifyMethod method = VerifyMethod::kExact;
  std::optional<Deviation> best_deviation;
  Rational tolerance;
  std::vector<Rational> gaps;  // per agent: best reachable utility minus current
  bool coarse = false;         // grid too coarse to test anything

  bool equilibrium() const { return verdict == Verdict::kEquilibrium; }
  friend bool operator==(const NeCertificate& a, const NeCertificate& b) {
    auto same_dev = [](const std::optional<Deviation>& x, const std::optional<Deviation>& y) {
      if (x.has_value() != y.has_value()) return false;
      if (!x) return true;
      return x->agent == y->agent && x->location == y->location && x->old_utility == y->old_utility &&
             x->new_utility == y->new_utility;
    };
    return a.verdict == b.verdict && a.mode == b.mode && a.method == b.method && a.tolerance == b.tolerance &&
           a.gaps == b.gaps && a.coarse == b.coarse && same_dev(a.best_deviation, b.best_deviation);
  }
};

namespace detail {

// Keeps the deviation with the largest gain; ties keep the earlier
// (smaller agent, then smaller location) candidate.
inline void consider(std::optional<Deviation>& best, Deviation d) {
  if (!best || d.gain() > best->gain()) best = std::move(d);
}

inline NeCertificate finish(NeCertificate cert, std::optional<Deviation> best) {
  if (best && best->gain() > cert.tolerance) {
    cert.verdict = Verdict::kNotEquilibrium;
    cert.best_deviation = std::move(best);
  } else {
    cert.verdict = Verdict::kEquilibrium;
  }
  return cert;
}

// Supports of all agents as exact piecewise-linear functions of agent i's
// location over L_i, together with the deviation candidates on which the
// winner set has to be evaluated.
struct DeviationCells {
  std::vector<PiecewiseLinear> supports;  // one curve per agent
  std::vector<Rational> kinks;            // common breakpoints of all curves
  std::vector<Rational> candidates;       // kinks, crossings, and cell midpoints
};

inline DeviationCells deviation_cells(const Game& game, const Profile& profile, std::size_t i) {
  const Interval li = game.feasible(i);
  const Rational half = game.width(i) / Rational(2);

  std::vector<Rational> grid = game.f().breakpoints();
  for (const auto& r : attraction_intervals(game, profile, i)) {
    grid.push_back(r.lower);
    grid.push_back(r.upper);
  }
  std::vector<Rational> kinks{li.lower, li.upper};
  for (const auto& b : grid)
    for (Rational y : {b - half, b + half})
      if (li.lower < y && y < li.upper) kinks.push_back(std::move(y));
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

  const std::size_t n = game.agents();
  std::vector<std::vector<Rational>> values(n);
  Profile moved = profile;
  for (const auto& y : kinks) {
    moved[i] = y;
    std::vector<Rational> s = supports_unchecked(game, moved);
    for (std::size_t j = 0; j < n; ++j) values[j].push_back(std::move(s[j]));
  }

  DeviationCells cells;
  cells.supports.reserve(n);
  for (std::size_t j = 0; j < n; ++j) cells.supports.push_back(PiecewiseLinear::from_nodes(kinks, values[j]));

  std::vector<Rational> points = kinks;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      Crossings c = crossings(cells.supports[j], cells.supports[k]);
      points.insert(points.end(), c.points.begin(), c.points.end());
    }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  cells.candidates.reserve(2 * points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    cells.candidates.push_back(points[k]);
    if (k + 1 < points.size()) cells.candidates.push_back((points[k] + points[k + 1]) / Rational(2));
  }
  cells.kinks = std::move(kinks);
  return cells;
}

inline Rational winner_utility_of(std::size_t i, const std::vector<Rational>& supports) {
  return winner_utilities(supports)[i];
}

}  // namespace detail

// Exact (tolerance 0) or epsilon-approximate support-mode certification.
inline NeCertificate verify_support_ne(const Game& game, const Profile& profile, const Rational& tolerance = Rational(0)) {
  game.validate(profile);
  if (tolerance.sign() < 0) throw DomainError("tolerance must be nonnegative");
  NeCertificate cert;
  cert.mode = UtilityMode::kSupport;
  cert.method = VerifyMethod::kExact;
  cert.tolerance = tolerance;
  std::optional<Deviation> best;
  for (std::size_t i = 0; i < game.agents(); ++i) {
    const PiecewiseLinear curve = detail::own_support_curve(game, profile, i);
    Extremum br = argmax(curve);
    Rational current = curve(profile[i]);
    cert.gaps.push_back(br.value - current);
    detail::consider(best, Deviation{i, std::move(br.location), std::move(current), std::move(br.value)});
  }
  return detail::finish(std::move(cert), std::move(best));
}

// Exact winner-mode certification over every deviation in L_i.
inline NeCertificate verify_winner_ne(const Game& game, const Profile& profile) {
  game.validate(profile);
  NeCertificate cert;
  cert.mode = UtilityMode::kWinner;
  cert.method = VerifyMethod::kExact;
  const std::vector<Rational> current = winner_utilities(detail::supports_unchecked(game, profile));
  std::optional<Deviation> best;
  for (std::size_t i = 0; i < game.agents(); ++i) {
    const detail::DeviationCells cells = detail::deviation_cells(game, profile, i);
    std::optional<Deviation> agent_best;
    std::vector<Rational> s(game.agents());
    for (const auto& y : cells.candidates) {
      for (std::size_t j = 0; j < game.agents(); ++j) s[j] = cells.supports[j](y);
      detail::consider(agent_best, Deviation{i, y, current[i], detail::winner_utility_of(i, s)});
    }
    cert.gaps.push_back(agent_best ? max(agent_best->gain(), Rational(0)) : Rational(0));
    if (agent_best) detail::consider(best, std::move(*agent_best));
  }
  return detail::finish(std::move(cert), std::move(best));
}

// Dispatches on the game's utility mode.
inline NeCertificate verify_exact(const Game& game, const Profile& profile, const Rational& tolerance = Rational(0)) {
  return game.mode() == UtilityMode::kSupport ? verify_support_ne(game, profile, tolerance)
                                              : verify_winner_ne(game, profile);
}

// Lattice oracle: tries x_i' in {w_i/2, w_i/2 + step, ...} for every agent under
// the game's utility mode. Any refutation it reports is a genuine deviation;
// a confirmation only holds up to the lattice resolution. A step longer than
// the whole space leaves nothing to test and is flagged coarse.
inline NeCertificate grid_verify(const Game& game, const Profile& profile, const Rational& step) {
  game.validate(profile);
  if (step.sign() <= 0) throw DomainError("grid step must be positive");
  NeCertificate cert;
  cert.mode = game.mode();
  cert.method = VerifyMethod::kGrid;
  cert.gaps.assign(game.agents(), Rational(0));
  if (step > Rational(1)) {
    cert.coarse = true;
    cert.verdict = Verdict::kEquilibrium;
    return cert;
  }

  const std::size_t n = game.agents();
  const std::vector<Rational> base_supports = detail::supports_unchecked(game, profile);
  const std::vector<Rational> base_utils =
      game.mode() == UtilityMode::kSupport ? base_supports : winner_utilities(base_supports);

  std::optional<Deviation> best;
  for (std::size_t i = 0; i < n; ++i) {
    // With c = congestion of the others, moving i to y gives
    //   s_i(y) = integral over R(y) of f/(c+1)
    //   s_j(y) = integral over R_j of f/c  -  integral over R_j ∩ R(y) of f/(c(c+1)).
    const StepFunction others = detail::congestion_of(detail::attraction_intervals(game, profile, i));
    const StepFunction entrant = combine(game.f(), others, [](const Rational& fv, const Rational& c) {
      return fv / (c + Rational(1));
    });
    const StepFunction shared = detail::shared_density(game.f(), others);
    const StepFunction loss = combine(game.f(), others, [](const Rational& fv, const Rational& c) {
      return c.sign() == 0 ? Rational(0) : fv / (c * (c + Rational(1)));
    });
    std::vector<Rational> own_base(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Interval rj = game.attraction(j, profile[j]);
      own_base[j] = integrate(shared, rj.lower, rj.upper);
    }

    const Interval li = game.feasible(i);
    const Rational half = game.width(i) / Rational(2);
    std::vector<Rational> s(n);
    std::optional<Deviation> agent_best;
    for (Rational y = li.lower; y <= li.upper; y += step) {
      s[i] = integrate(entrant, y - half, y + half);
      Rational util;
      if (game.mode() == UtilityMode::kSupport) {
        util = s[i];
      } else {
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const Interval rj = game.attraction(j, profile[j]);
          const Rational lo = max(rj.lower, y - half), hi = min(rj.upper, y + half);
          s[j] = lo < hi ? own_base[j] - integrate(loss, lo, hi) : own_base[j];
        }
        util = detail::winner_utility_of(i, s);
      }
      detail::consider(agent_best, Deviation{i, y, base_utils[i], std::move(util)});
    }
    if (agent_best) {
      cert.gaps[i] = max(agent_best->gain(), Rational(0));
      detail::consider(best, std::move(*agent_best));
    }
  }
  return detail::finish(std::move(cert), std::move(best));
}

// One unilateral move along a replayed path.
struct ReplayStep {
  int path = 0;
  int step = 0;
  std::size_t mover = 0;
  Profile before;
  Profile after;
  Rational support_before, support_after;
  Rational winner_before, winner_after;
  int expected_sign = 0;  // required sign of the mover's winner-utility change
  int observed_sign() const { return (winner_after - winner_before).sign(); }
  bool holds() const { return observed_sign() == expected_sign; }
};

struct OrdinalReplay {
  Game game;
  std::vector<ReplayStep> steps;
  bool holds() const {
    return std::all_of(steps.begin(), steps.end(), [](const ReplayStep& s) { return s.holds(); });
  }
};

inline Game ordinal_counterexample_game() {
  return Game(Density::from_pieces({{Rational(1, 3), Rational(4, 3)},
                                    {Rational(2, 3), Rational(1, 3)},
                                    {Rational(1), Rational(4, 3)}}),
              {Rational(1, 3), Rational(1, 3), Rational(1, 3)}, UtilityMode::kWinner);
}

// Replays two unilateral-move paths between the same pair of profiles whose
// winner-utility sign patterns no ordinal potential can satisfy: path 1 has
// two strict losses and two neutral moves, path 2 a single strict gain.
// Throws InternalInvariantError if the computed signs disagree.
inline OrdinalReplay replay_ordinal_counterexample() {
  OrdinalReplay out{ordinal_counterexample_game(), {}};
  const Rational a(1, 6), b(5, 9), c(5, 6);
  const std::vector<std::vector<Profile>> paths = {
      {{a, a, a}, {a, a, b}, {a, b, b}, {a, b, c}, {a, a, c}},
      {{a, a, a}, {a, a, c}},
  };
  const std::vector<std::vector<int>> signs = {{-1, -1, 0, 0}, {+1}};
  for (std::size_t p = 0; p < paths.size(); ++p) {
    for (std::size_t k = 0; k + 1 < paths[p].size(); ++k) {
      const Profile& from = paths[p][k];
      const Profile& to = paths[p][k + 1];
      std::size_t mover = 0;
      for (std::size_t i = 0; i < from.size(); ++i)
        if (from[i] != to[i]) mover = i;
      const auto s0 = support_vector(out.game, from), s1 = support_vector(out.game, to);
      ReplayStep st;
      st.path = static_cast<int>(p + 1);
      st.step = static_cast<int>(k + 1);
      st.mover = mover;
      st.before = from;
      st.after = to;
      st.support_before = s0[mover];
      st.support_after = s1[mover];
      st.winner_before = winner_utilities(s0)[mover];
      st.winner_after = winner_utilities(s1)[mover];
      st.expected_sign = signs[p][k];
      if (!st.holds())
        throw InternalInvariantError("ordinal counterexample: path " + std::to_string(st.path) + " step " +
                                     std::to_string(st.step) + " mover utility " + st.winner_before.str() +
                                     " -> " + st.winner_after.str());
      out.steps.push_back(std::move(st));
    }
  }
  return out;
}

}  // namespace hotelling
