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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hotelling/errors.hpp"
#include "hotelling/game.hpp"
#include "hotelling/piecewise_linear.hpp"
#include "hotelling/rational.hpp"

namespace hotelling {

namespace detail {

// Agent i's support as a function of its own location over L_i, others fixed:
// x -> integral over [x - w_i/2, x + w_i/2] of f / (c_{-i} + 1).
inline PiecewiseLinear own_support_curve(const Game& game, const Profile& profile, std::size_t i) {
  const StepFunction others = congestion_of(attraction_intervals(game, profile, i));
  const StepFunction entrant_share = combine(game.f(), others, [](const Rational& fv, const Rational& c) {
    return fv / (c + Rational(1));
  });
  const Interval li = game.feasible(i);
  return window_objective(entrant_share, game.width(i), li.lower, li.upper);
}

}  // namespace detail

// Exact best response of agent i in the support setting (leftmost maximizer).
inline Extremum best_response(const Game& game, const Profile& profile, std::size_t i) {
  if (game.mode() != UtilityMode::kSupport)
    throw ModeError("best_response is defined for the support setting; use the winner verifier instead");
  game.validate(profile);
  if (i >= game.agents()) throw ConstraintError("agent " + std::to_string(i + 1) + " does not exist");
  return argmax(detail::own_support_curve(game, profile, i));
}

enum class MoveOrder { kRoundRobin, kMaxGain };

inline std::string to_string(MoveOrder o) { return o == MoveOrder::kRoundRobin ? "round-robin" : "max-gain"; }

struct DynamicsOptions {
  Rational epsilon{1, 1000000000};
  long round_limit = 100000;
  MoveOrder order = MoveOrder::kRoundRobin;
};

struct DynamicsStep {
  std::size_t agent = 0;
  Rational from;
  Rational to;
  Rational gain;
  Rational potential_after;
};

enum class StopReason { kEpsilonStable, kRoundLimit };

inline std::string to_string(StopReason r) { return r == StopReason::kEpsilonStable ? "epsilon-stable" : "round-limit"; }

struct DynamicsTrace {
  Rational initial_potential;
  std::vector<DynamicsStep> rounds;
  bool terminated = false;
  StopReason reason = StopReason::kRoundLimit;
};

struct DynamicsResult {
  Profile profile;
  DynamicsTrace trace;
};

// Moves one agent at a time to an exact best response whenever that gains
// more than epsilon. Every such move raises the potential by the same amount,
// and the potential is bounded by H_n, so at most H_n / epsilon moves happen.
inline DynamicsResult run_dynamics(const Game& game, Profile start, const DynamicsOptions& opts = {}) {
  if (game.mode() != UtilityMode::kSupport) throw ModeError("best-response dynamics need the support setting");
  if (opts.epsilon.sign() <= 0) throw DomainError("epsilon must be positive");
  game.validate(start);

  DynamicsResult out{std::move(start), {}};
  Profile& x = out.profile;
  DynamicsTrace& trace = out.trace;
  trace.initial_potential = potential(game, x);
  const std::size_t n = game.agents();

  auto move = [&](std::size_t i, Extremum br, Rational gain) {
    DynamicsStep step{i, x[i], br.location, std::move(gain), {}};
    x[i] = std::move(br.location);
    step.potential_after = potential(game, x);
    trace.rounds.push_back(std::move(step));
  };
  if (n == 0) {
    trace.terminated = true;
    trace.reason = StopReason::kEpsilonStable;
    return out;
  }

  if (opts.order == MoveOrder::kRoundRobin) {
    std::size_t quiet = 0;  // consecutive agents that could not gain > epsilon
    for (std::size_t i = 0; quiet < n; i = (i + 1) % n) {
      const PiecewiseLinear curve = detail::own_support_curve(game, x, i);
      Extremum br = argmax(curve);
      Rational gain = br.value - curve(x[i]);
      if (gain > opts.epsilon) {
        if (static_cast<long>(trace.rounds.size()) >= opts.round_limit) return out;
        move(i, std::move(br), std::move(gain));
        quiet = 0;
      } else {
        ++quiet;
      }
    }
  } else {
    while (true) {
      std::size_t best_agent = n;
      Extremum best_br;
      Rational best_gain;
      for (std::size_t i = 0; i < n; ++i) {
        const PiecewiseLinear curve = detail::own_support_curve(game, x, i);
        Extremum br = argmax(curve);
        Rational gain = br.value - curve(x[i]);
        if (gain > opts.epsilon && (best_agent == n || gain > best_gain)) {
          best_agent = i;
          best_br = std::move(br);
          best_gain = std::move(gain);
        }
      }
      if (best_agent == n) break;
      if (static_cast<long>(trace.rounds.size()) >= opts.round_limit) return out;
      move(best_agent, std::move(best_br), std::move(best_gain));
    }
  }
  trace.terminated = true;
  trace.reason = StopReason::kEpsilonStable;
  return out;
}

}  // namespace hotelling
