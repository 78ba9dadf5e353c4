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

#include "hotelling/piecewise_linear.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace hotelling {
namespace {

StepFunction example4_density() {
  return StepFunction({Rational(0), Rational(2, 5), Rational(1)}, {Rational(5, 4), Rational(5, 6)});
}

StepFunction random_step(std::mt19937_64& rng) {
  const int pieces = 1 + static_cast<int>(rng() % 5);
  std::vector<long> cuts;
  while (static_cast<int>(cuts.size()) < pieces - 1) {
    const long c = 1 + static_cast<long>(rng() % 99);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> b{Rational(0)};
  for (long c : cuts) b.emplace_back(c, 100);
  b.emplace_back(1);
  std::vector<Rational> v;
  for (int k = 0; k < pieces; ++k) v.emplace_back(static_cast<long>(rng() % 30), 10);
  return StepFunction(b, v);
}

PiecewiseLinear line(Rational a, Rational b, Rational ya, Rational yb) { return PiecewiseLinear::from_nodes({a, b}, {ya, yb}); }

TEST(PiecewiseLinear, RejectsDiscontinuity) {
  EXPECT_THROW(PiecewiseLinear({Rational(0), Rational(1, 2), Rational(1)}, {Rational(1), Rational(1)},
                               {Rational(0), Rational(1)}),
               DomainError);
}

TEST(PiecewiseLinear, EvaluatesExactly) {
  const PiecewiseLinear p = PiecewiseLinear::from_nodes({Rational(0), Rational(1, 3), Rational(1)},
                                                        {Rational(0), Rational(1), Rational(0)});
  EXPECT_EQ(p(Rational(1, 6)), Rational(1, 2));
  EXPECT_EQ(p(Rational(2, 3)), Rational(1, 2));
  EXPECT_THROW(p(Rational(2)), DomainError);
}

TEST(WindowObjective, UniformIsConstant) {
  const PiecewiseLinear p = window_objective(StepFunction::constant(Rational(1)), Rational(2, 5));
  EXPECT_EQ(p.lower(), Rational(1, 5));
  EXPECT_EQ(p.upper(), Rational(4, 5));
  for (const auto& y : p.node_values()) EXPECT_EQ(y, Rational(2, 5));
}

TEST(WindowObjective, TwoPieceDensity) {
  const PiecewiseLinear p = window_objective(example4_density(), Rational(2, 5));
  EXPECT_EQ(p(Rational(1, 5)), Rational(1, 2));
  EXPECT_EQ(p(Rational(4, 5)), Rational(1, 3));
  EXPECT_EQ(p.breakpoints(), (std::vector<Rational>{Rational(1, 5), Rational(3, 5), Rational(4, 5)}));
  EXPECT_EQ(p(Rational(2, 5)), Rational(5, 12));
}

TEST(WindowObjective, ZeroDensity) {
  const PiecewiseLinear p = window_objective(StepFunction::constant(Rational(0)), Rational(1, 3));
  for (const auto& y : p.node_values()) EXPECT_EQ(y, Rational(0));
}

TEST(WindowObjective, EmptyFeasibleInterval) {
  EXPECT_THROW(window_objective(example4_density(), Rational(1, 5), Rational(1, 2), Rational(1, 3)), DomainError);
}

TEST(WindowObjective, MatchesIntegralAtRandomPoints) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 1000; ++t) {
    const StepFunction g = random_step(rng);
    const Rational w(1 + static_cast<long>(rng() % 100), 100);
    const PiecewiseLinear p = window_objective(g, w);
    const Rational x = p.lower() + (p.upper() - p.lower()) * Rational(static_cast<long>(rng() % 1001), 1000);
    ASSERT_EQ(p(x), oracle::mass(g, x - w / Rational(2), x + w / Rational(2)));
  }
}

TEST(WindowObjective, ArgmaxAgreesWithDenseGrid) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 20; ++t) {
    const StepFunction g = random_step(rng);
    const Rational w(5 + static_cast<long>(rng() % 90), 100);
    const PiecewiseLinear p = window_objective(g, w);
    const Extremum best = argmax(p);
    const Rational step(1, 10000);
    Rational grid_best = p(p.lower());
    Rational grid_at = p.lower();
    for (Rational x = p.lower(); x <= p.upper(); x += step) {
      const Rational v = oracle::mass(g, x - w / Rational(2), x + w / Rational(2));
      if (v > grid_best) {
        grid_best = v;
        grid_at = x;
      }
    }
    EXPECT_GE(best.value, grid_best);
    // The grid maximizer sits within one cell of some exact maximizer.
    bool near = false;
    for (const auto& iv : level_set(p, best.value))
      near = near || (iv.lower - step <= grid_at && grid_at <= iv.upper + step);
    EXPECT_TRUE(near) << "grid maximizer " << grid_at << " exact " << best.location;
  }
}

TEST(Argmax, ConstantGivesLeftEndpoint) {
  const PiecewiseLinear p = PiecewiseLinear::constant(Rational(1, 4), Rational(3, 4), Rational(2));
  EXPECT_EQ(argmax(p).location, Rational(1, 4));
  EXPECT_EQ(argmax_rightmost(p).location, Rational(3, 4));
}

TEST(Argmax, InteriorKink) {
  const PiecewiseLinear p = PiecewiseLinear::from_nodes({Rational(0), Rational(2, 7), Rational(1)},
                                                        {Rational(0), Rational(3), Rational(1)});
  EXPECT_EQ(argmax(p).location, Rational(2, 7));
  EXPECT_EQ(argmax(p).value, Rational(3));
}

TEST(Argmax, WindowOfTwoPieceDensity) {
  const Extremum e = argmax(window_objective(example4_density(), Rational(2, 5)));
  EXPECT_EQ(e.location, Rational(1, 5));
  EXPECT_EQ(e.value, Rational(1, 2));
}

TEST(LevelSet, ConstantWholeDomain) {
  const auto s = level_set(PiecewiseLinear::constant(Rational(0), Rational(1), Rational(1, 2)), Rational(1, 2));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].lower, Rational(0));
  EXPECT_EQ(s[0].upper, Rational(1));
}

TEST(LevelSet, AboveMaximumIsEmpty) {
  const PiecewiseLinear p = line(Rational(0), Rational(1), Rational(0), Rational(1));
  EXPECT_TRUE(level_set(p, Rational(2)).empty());
}

TEST(LevelSet, UnimodalPeakIsAPoint) {
  const PiecewiseLinear p = PiecewiseLinear::from_nodes({Rational(0), Rational(1, 3), Rational(1)},
                                                        {Rational(0), Rational(1), Rational(0)});
  const auto s = level_set(p, Rational(1));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].lower, Rational(1, 3));
  EXPECT_EQ(s[0].upper, Rational(1, 3));
  const auto two = level_set(p, Rational(1, 2));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].lower, Rational(1, 6));
  EXPECT_EQ(two[1].lower, Rational(2, 3));
}

TEST(LevelSet, PlateauAndPointsMixed) {
  const PiecewiseLinear p = PiecewiseLinear::from_nodes(
      {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)},
      {Rational(0), Rational(1), Rational(1), Rational(0), Rational(1)});
  const auto s = level_set(p, Rational(1));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].lower, Rational(1, 4));
  EXPECT_EQ(s[0].upper, Rational(1, 2));
  EXPECT_EQ(s[1].lower, Rational(1));
}

TEST(Crossings, Identical) {
  const PiecewiseLinear p = line(Rational(0), Rational(1), Rational(0), Rational(1));
  const Crossings c = crossings(p, p);
  EXPECT_TRUE(c.identical);
  EXPECT_TRUE(c.points.empty());
}

TEST(Crossings, SeparatedConstants) {
  const Crossings c = crossings(PiecewiseLinear::constant(Rational(0), Rational(1), Rational(1)),
                                PiecewiseLinear::constant(Rational(0), Rational(1), Rational(0)));
  EXPECT_FALSE(c.identical);
  EXPECT_TRUE(c.points.empty());
}

TEST(Crossings, SymmetricLines) {
  const Crossings c = crossings(line(Rational(0), Rational(1), Rational(0), Rational(1)),
                                line(Rational(0), Rational(1), Rational(1), Rational(0)));
  EXPECT_EQ(c.points, std::vector<Rational>{Rational(1, 2)});
}

TEST(Crossings, TouchWithoutSignChange) {
  const PiecewiseLinear p = PiecewiseLinear::from_nodes({Rational(0), Rational(1, 2), Rational(1)},
                                                        {Rational(1), Rational(0), Rational(1)});
  const Crossings c = crossings(p, PiecewiseLinear::constant(Rational(0), Rational(1), Rational(0)));
  EXPECT_EQ(c.points, std::vector<Rational>{Rational(1, 2)});
}

TEST(RunningMax, MatchesPrefixMaximumOnRandomFunctions) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    std::vector<Rational> xs{Rational(0)}, ys;
    const int nodes = 2 + static_cast<int>(rng() % 8);
    for (int k = 1; k < nodes; ++k) xs.push_back(xs.back() + Rational(1 + static_cast<long>(rng() % 5), 7));
    for (int k = 0; k < nodes; ++k) ys.emplace_back(static_cast<long>(rng() % 11) - 5, 3);
    const PiecewiseLinear p = PiecewiseLinear::from_nodes(xs, ys);
    const PiecewiseLinear rm = running_max(p), sm = suffix_max(p);
    std::vector<Rational> probe;
    for (int k = 0; k <= 60; ++k) probe.push_back(p.lower() + (p.upper() - p.lower()) * Rational(k, 60));
    for (const auto& x : probe) {
      Rational pre = p(p.lower()), suf = p(p.upper());
      for (const auto& z : probe) {
        if (z <= x) pre = max(pre, p(z));
        if (z >= x) suf = max(suf, p(z));
      }
      for (const auto& b : xs) {
        if (b <= x) pre = max(pre, p(b));
        if (b >= x) suf = max(suf, p(b));
      }
      pre = max(pre, p(x));
      suf = max(suf, p(x));
      ASSERT_EQ(rm(x), pre) << "x=" << x;
      ASSERT_EQ(sm(x), suf) << "x=" << x;
    }
  }
}

TEST(Algebra, SumDifferenceAndRestriction) {
  const PiecewiseLinear p = line(Rational(0), Rational(1), Rational(0), Rational(1));
  const PiecewiseLinear q = PiecewiseLinear::from_nodes({Rational(0), Rational(1, 2), Rational(1)},
                                                        {Rational(1), Rational(0), Rational(1)});
  const PiecewiseLinear s = p + q, d = p - q;
  for (int k = 0; k <= 10; ++k) {
    const Rational x(k, 10);
    EXPECT_EQ(s(x), p(x) + q(x));
    EXPECT_EQ(d(x), p(x) - q(x));
  }
  const PiecewiseLinear r = q.restrict(Rational(1, 4), Rational(3, 4));
  EXPECT_EQ(r.lower(), Rational(1, 4));
  EXPECT_EQ(r(Rational(1, 2)), Rational(0));
  EXPECT_THROW(p + r, DomainError);
}

}  // namespace
}  // namespace hotelling
