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
#include <cstddef>
#include <iterator>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hotelling/errors.hpp"
#include "hotelling/rational.hpp"

namespace hotelling {

// Closed interval [lower, upper].
struct Interval {
  Rational lower;
  Rational upper;
  bool contains(const Rational& x) const { return lower <= x && x <= upper; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Piecewise-constant function on [0,1]. Piece k covers [b_k, b_{k+1}); the
// last piece is closed. Single points carry no mass, so the open/closed choice
// never affects an integral.
class StepFunction {
 public:
  StepFunction() : StepFunction({Rational(0), Rational(1)}, {Rational(0)}) {}

  StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values)
      : breaks_(std::move(breakpoints)), values_(std::move(values)) {
    if (breaks_.size() < 2 || breaks_.front() != Rational(0) || breaks_.back() != Rational(1))
      throw DomainError("step function breakpoints must start at 0 and end at 1");
    for (std::size_t k = 1; k < breaks_.size(); ++k)
      if (!(breaks_[k - 1] < breaks_[k]))
        throw DomainError("step function breakpoints must be strictly ascending");
    if (values_.size() + 1 != breaks_.size())
      throw DomainError("step function needs one value per piece");
    prefix_.reserve(breaks_.size());
    prefix_.emplace_back(0);
    for (std::size_t k = 0; k < values_.size(); ++k)
      prefix_.push_back(prefix_.back() + values_[k] * (breaks_[k + 1] - breaks_[k]));
  }

  static StepFunction constant(Rational v) { return StepFunction({Rational(0), Rational(1)}, {std::move(v)}); }

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t pieces() const { return values_.size(); }

  // Index of the piece containing x (x in [0,1]).
  std::size_t piece_index(const Rational& x) const {
    if (x < breaks_.front() || x > breaks_.back())
      throw DomainError("point " + x.str() + " outside [0,1]");
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    auto k = static_cast<std::size_t>(std::distance(breaks_.begin(), it));
    return std::min(k, values_.size()) - 1;
  }

  const Rational& value_at(const Rational& x) const { return values_[piece_index(x)]; }

  // Integral from 0 to x.
  Rational antiderivative(const Rational& x) const {
    const std::size_t k = piece_index(x);
    return prefix_[k] + values_[k] * (x - breaks_[k]);
  }

  Rational total() const { return prefix_.back(); }

  // Merges adjacent pieces with equal values.
  StepFunction normalized() const {
    std::vector<Rational> b{breaks_.front()};
    std::vector<Rational> v{values_.front()};
    for (std::size_t k = 1; k < values_.size(); ++k) {
      if (values_[k] == v.back()) continue;
      b.push_back(breaks_[k]);
      v.push_back(values_[k]);
    }
    b.push_back(breaks_.back());
    return StepFunction(std::move(b), std::move(v));
  }

  template <typename Op>
  StepFunction map(Op op) const {
    std::vector<Rational> v;
    v.reserve(values_.size());
    for (const auto& x : values_) v.push_back(op(x));
    return StepFunction(breaks_, std::move(v)).normalized();
  }

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.breaks_ == b.breaks_ && a.values_ == b.values_;
  }

 private:
  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
  std::vector<Rational> prefix_;
};

// Exact integral of g over [lower, upper] within [0,1].
inline Rational integrate(const StepFunction& g, const Rational& lower, const Rational& upper) {
  if (lower < Rational(0) || upper > Rational(1))
    throw DomainError("integration interval [" + lower.str() + ", " + upper.str() + "] outside [0,1]");
  if (upper < lower)
    throw DomainError("integration interval [" + lower.str() + ", " + upper.str() + "] is reversed");
  return g.antiderivative(upper) - g.antiderivative(lower);
}

// Sorted union of two ascending breakpoint grids.
inline std::vector<Rational> merge_grids(std::span<const Rational> a, std::span<const Rational> b) {
  std::vector<Rational> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Pointwise op(g(x), h(x)) on the union grid. A throwing op is reported with
// the offending piece.
template <typename Op>
StepFunction combine(const StepFunction& g, const StepFunction& h, Op op) {
  std::vector<Rational> grid = merge_grids(g.breakpoints(), h.breakpoints());
  std::vector<Rational> vals;
  vals.reserve(grid.size() - 1);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const Rational& left = grid[k];
    try {
      vals.push_back(op(g.value_at(left), h.value_at(left)));
    } catch (const ArithmeticError& e) {
      throw ArithmeticError(std::string(e.what()) + " on piece [" + grid[k].str() + ", " +
                            grid[k + 1].str() + ")");
    }
  }
  return StepFunction(std::move(grid), std::move(vals)).normalized();
}

inline StepFunction operator+(const StepFunction& g, const StepFunction& h) {
  return combine(g, h, [](const Rational& a, const Rational& b) { return a + b; });
}

}  // namespace hotelling
