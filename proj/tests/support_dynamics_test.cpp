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

#include "hotelling/support_dynamics.hpp"

#include <random>

#include <gtest/gtest.h>

#include "hotelling/analysis.hpp"
#include "hotelling/verifier.hpp"
#include "oracles.hpp"

namespace hotelling {
namespace {

Game example4(UtilityMode mode = UtilityMode::kSupport) {
  return Game(Density::from_pieces({{Rational(2, 5), Rational(5, 4)}, {Rational(1), Rational(5, 6)}}),
              {Rational(2, 5), Rational(2, 5)}, mode);
}

TEST(BestResponse, TwoPieceDensityAgainstFixedAgent) {
  const Game g = example4();
  const Profile x{Rational(1, 5), Rational(1, 5)};
  const Extremum br = best_response(g, x, 1);
  EXPECT_EQ(br.location, Rational(3, 5));
  EXPECT_EQ(br.value, Rational(1, 3));
  const oracle::GridBest grid = oracle::grid_best_support(g, x, 1, Rational(1, 10000));
  EXPECT_EQ(grid.value, Rational(1, 3));
  EXPECT_EQ(grid.location, Rational(3, 5));
}

TEST(BestResponse, SingleAgentUniform) {
  const Game g(Density::uniform(), {Rational(1, 4)}, UtilityMode::kSupport);
  const Extremum br = best_response(g, {Rational(1, 2)}, 0);
  EXPECT_EQ(br.location, Rational(1, 8));
  EXPECT_EQ(br.value, Rational(1, 4));
}

TEST(BestResponse, IdempotentAtUniqueMaximizer) {
  const Game g(Density::from_pieces({{Rational(1, 2), Rational(0)}, {Rational(3, 5), Rational(10)}, {Rational(1), Rational(0)}}),
               {Rational(1, 10)}, UtilityMode::kSupport);
  const Extremum br = best_response(g, {Rational(11, 20)}, 0);
  EXPECT_EQ(br.location, Rational(11, 20));
  EXPECT_EQ(br.value, Rational(1));
}

TEST(BestResponse, WinnerModeIsRejected) {
  EXPECT_THROW(best_response(example4(UtilityMode::kWinner), {Rational(1, 5), Rational(1, 5)}, 0), ModeError);
  EXPECT_THROW(run_dynamics(example4(UtilityMode::kWinner), {Rational(1, 5), Rational(1, 5)}), ModeError);
}

TEST(BestResponse, MatchesGridOracleOnRandomInstances) {
  InstanceSpec spec;
  spec.n_max = 4;
  spec.granularity = Rational(1, 20);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Game g = random_instance(seed, spec);
    std::mt19937_64 rng(seed);
    const Profile x = oracle::random_profile(rng, g);
    const std::size_t i = rng() % g.agents();
    const Extremum br = best_response(g, x, i);
    const oracle::GridBest grid = oracle::grid_best_support(g, x, i, Rational(1, 200));
    Profile y = x;
    y[i] = br.location;
    EXPECT_EQ(oracle::supports(g, y)[i], br.value);
    EXPECT_GE(br.value, grid.value) << "seed " << seed;
  }
}

TEST(Dynamics, StartAtEquilibriumMakesNoMove) {
  const Game g(Density::uniform(), {Rational(1, 2), Rational(1, 2)}, UtilityMode::kSupport);
  const DynamicsResult r = run_dynamics(g, {Rational(1, 4), Rational(3, 4)});
  EXPECT_TRUE(r.trace.rounds.empty());
  EXPECT_TRUE(r.trace.terminated);
  EXPECT_EQ(r.trace.reason, StopReason::kEpsilonStable);
}

TEST(Dynamics, FamilyInstanceConvergesToCertifiedEquilibrium) {
  const Game g = poa_family_game(2);
  const Rational eps(1, 1000000);
  for (MoveOrder order : {MoveOrder::kRoundRobin, MoveOrder::kMaxGain}) {
    const DynamicsResult r = run_dynamics(g, {Rational(3, 4), Rational(3, 4)}, {eps, 100000, order});
    EXPECT_TRUE(r.trace.terminated);
    const NeCertificate c = verify_support_ne(g, r.profile, eps);
    EXPECT_TRUE(c.equilibrium());
    for (const auto& gap : c.gaps) EXPECT_LE(gap, eps);
  }
}

TEST(Dynamics, UniformTwoAgentsAndPotentialBookkeeping) {
  const Game g(Density::uniform(), {Rational(1, 2), Rational(1, 2)}, UtilityMode::kSupport);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    const Profile start = oracle::random_profile(rng, g);
    const DynamicsResult r = run_dynamics(g, start);
    const auto s = support_vector(g, r.profile);
    const bool shared = s[0] == Rational(1, 4) && s[1] == Rational(1, 4);
    const bool split = s[0] == Rational(1, 2) && s[1] == Rational(1, 2);
    EXPECT_TRUE(shared || split);
    Rational gains;
    Rational before = r.trace.initial_potential;
    for (const auto& step : r.trace.rounds) {
      EXPECT_EQ(step.potential_after - before, step.gain);
      before = step.potential_after;
      gains += step.gain;
    }
    EXPECT_EQ(potential(g, r.profile) - potential(g, start), gains);
  }
}

TEST(Dynamics, RoundLimitIsReportedNotThrown) {
  const Game g = poa_family_game(3);
  const DynamicsResult r = run_dynamics(g, Profile(3, Rational(5, 6)), {Rational(1, 1000000), 1, MoveOrder::kRoundRobin});
  EXPECT_FALSE(r.trace.terminated);
  EXPECT_EQ(r.trace.reason, StopReason::kRoundLimit);
  EXPECT_EQ(r.trace.rounds.size(), 1u);
}

TEST(Dynamics, RejectsNonPositiveEpsilon) {
  EXPECT_THROW(run_dynamics(poa_family_game(2), Profile(2, Rational(1, 4)), {Rational(0), 10, MoveOrder::kRoundRobin}),
               DomainError);
}

TEST(Dynamics, BothOrdersRespectTheMoveBound) {
  InstanceSpec spec;
  const Rational eps(1, 1000000);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Game g = random_instance(seed, spec);
    const Rational bound = (harmonic(static_cast<long>(g.agents())) / eps).ceil();
    std::mt19937_64 rng(seed);
    const Profile start = oracle::random_profile(rng, g);
    for (MoveOrder order : {MoveOrder::kRoundRobin, MoveOrder::kMaxGain}) {
      const DynamicsResult r = run_dynamics(g, start, {eps, 100000, order});
      ASSERT_TRUE(r.trace.terminated);
      EXPECT_LE(Rational(static_cast<long>(r.trace.rounds.size())), bound);
      Rational before = r.trace.initial_potential;
      for (const auto& step : r.trace.rounds) {
        EXPECT_GT(step.gain, eps);
        EXPECT_EQ(step.potential_after - before, step.gain);
        before = step.potential_after;
      }
      EXPECT_TRUE(verify_support_ne(g, r.profile, eps).equilibrium());
    }
  }
}

}  // namespace
}  // namespace hotelling
