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
#include <utility>
#include <vector>

#include "hotelling/errors.hpp"
#include "hotelling/rational.hpp"
#include "hotelling/step_function.hpp"

namespace hotelling {

// Continuous piecewise-linear function on [lower, upper]. Each piece stores
// slope and intercept, so evaluation and root finding are closed-form.
// A single-point domain is allowed and holds one constant piece.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<Rational> breakpoints, std::vector<Rational> slopes,
                  std::vector<Rational> intercepts)
      : xs_(std::move(breakpoints)), slopes_(std::move(slopes)), intercepts_(std::move(intercepts)) {
    if (xs_.empty()) throw DomainError("piecewise-linear function needs a nonempty domain");
    for (std::size_t k = 1; k < xs_.size(); ++k)
      if (!(xs_[k - 1] < xs_[k])) throw DomainError("piecewise-linear breakpoints must ascend strictly");
    const std::size_t expected = std::max<std::size_t>(1, xs_.size() - 1);
    if (slopes_.size() != expected || intercepts_.size() != expected)
      throw DomainError("piecewise-linear function needs one slope/intercept per piece");
    for (std::size_t k = 1; k + 1 < xs_.size(); ++k)
      if (piece_value(k - 1, xs_[k]) != piece_value(k, xs_[k]))
        throw DomainError("piecewise-linear function is discontinuous at " + xs_[k].str());
  }

  // Linear interpolation through (xs[k], ys[k]).
  static PiecewiseLinear from_nodes(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size() || xs.empty()) throw DomainError("node lists must be nonempty and aligned");
    if (xs.size() == 1) return PiecewiseLinear(xs, {Rational(0)}, {ys[0]});
    std::vector<Rational> slopes, intercepts;
    slopes.reserve(xs.size() - 1);
    intercepts.reserve(xs.size() - 1);
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      Rational s = (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]);
      intercepts.push_back(ys[k] - s * xs[k]);
      slopes.push_back(std::move(s));
    }
    return PiecewiseLinear(xs, std::move(slopes), std::move(intercepts));
  }

  static PiecewiseLinear constant(const Rational& lower, const Rational& upper, const Rational& v) {
    if (upper < lower) throw DomainError("empty domain");
    if (lower == upper) return from_nodes({lower}, {v});
    return from_nodes({lower, upper}, {v, v});
  }

  const Rational& lower() const { return xs_.front(); }
  const Rational& upper() const { return xs_.back(); }
  const std::vector<Rational>& breakpoints() const { return xs_; }
  const std::vector<Rational>& slopes() const { return slopes_; }
  const std::vector<Rational>& intercepts() const { return intercepts_; }
  std::size_t pieces() const { return slopes_.size(); }

  // Piece k spans [xs[k], xs[k+1]] (the single piece of a point domain spans it).
  Rational piece_lower(std::size_t k) const { return xs_[k]; }
  Rational piece_upper(std::size_t k) const { return xs_.size() == 1 ? xs_[0] : xs_[k + 1]; }

  Rational piece_value(std::size_t k, const Rational& x) const { return slopes_[k] * x + intercepts_[k]; }

  Rational operator()(const Rational& x) const {
    if (x < lower() || x > upper())
      throw DomainError("point " + x.str() + " outside [" + lower().str() + ", " + upper().str() + "]");
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t k = static_cast<std::size_t>(std::distance(xs_.begin(), it));
    k = std::min(k, pieces()) - 1;
    return piece_value(k, x);
  }

  std::vector<Rational> node_values() const {
    std::vector<Rational> ys;
    ys.reserve(xs_.size());
    for (const auto& x : xs_) ys.push_back((*this)(x));
    return ys;
  }

  // Restriction to [lo, hi] ⊆ domain.
  PiecewiseLinear restrict(const Rational& lo, const Rational& hi) const {
    if (lo < lower() || hi > upper() || hi < lo) throw DomainError("restriction outside domain");
    std::vector<Rational> xs{lo};
    for (const auto& x : xs_)
      if (lo < x && x < hi) xs.push_back(x);
    if (hi != lo) xs.push_back(hi);
    std::vector<Rational> ys;
    for (const auto& x : xs) ys.push_back((*this)(x));
    return from_nodes(xs, ys);
  }

 private:
  std::vector<Rational> xs_;
  std::vector<Rational> slopes_;
  std::vector<Rational> intercepts_;
};

namespace detail {

inline void require_same_domain(const PiecewiseLinear& p, const PiecewiseLinear& q) {
  if (p.lower() != q.lower() || p.upper() != q.upper())
    throw DomainError("piecewise-linear operands have different domains");
}

template <typename Op>
PiecewiseLinear pointwise(const PiecewiseLinear& p, const PiecewiseLinear& q, Op op) {
  require_same_domain(p, q);
  std::vector<Rational> xs = merge_grids(p.breakpoints(), q.breakpoints());
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const auto& x : xs) ys.push_back(op(p(x), q(x)));
  return PiecewiseLinear::from_nodes(xs, ys);
}

// Appends (x, y) unless x repeats the last node.
inline void push_node(std::vector<Rational>& xs, std::vector<Rational>& ys, Rational x, Rational y) {
  if (!xs.empty() && xs.back() == x) return;
  xs.push_back(std::move(x));
  ys.push_back(std::move(y));
}

}  // namespace detail

inline PiecewiseLinear operator+(const PiecewiseLinear& p, const PiecewiseLinear& q) {
  return detail::pointwise(p, q, [](const Rational& a, const Rational& b) { return a + b; });
}
inline PiecewiseLinear operator-(const PiecewiseLinear& p, const PiecewiseLinear& q) {
  return detail::pointwise(p, q, [](const Rational& a, const Rational& b) { return a - b; });
}

struct Extremum {
  Rational location;
  Rational value;
};

// Maximum and its leftmost maximizer. The maximum of a continuous
// piecewise-linear function is attained at a breakpoint.
inline Extremum argmax(const PiecewiseLinear& p) {
  const auto& xs = p.breakpoints();
  Extremum best{xs[0], p(xs[0])};
  for (std::size_t k = 1; k < xs.size(); ++k) {
    Rational v = p(xs[k]);
    if (v > best.value) best = {xs[k], std::move(v)};
  }
  return best;
}

inline Extremum argmax_rightmost(const PiecewiseLinear& p) {
  const auto& xs = p.breakpoints();
  Extremum best{xs.back(), p(xs.back())};
  for (std::size_t k = xs.size() - 1; k-- > 0;) {
    Rational v = p(xs[k]);
    if (v > best.value) best = {xs[k], std::move(v)};
  }
  return best;
}

// Maximal closed intervals (possibly single points) on which p equals v.
inline std::vector<Interval> level_set(const PiecewiseLinear& p, const Rational& v) {
  std::vector<Interval> out;
  auto add = [&](Rational lo, Rational hi) {
    if (!out.empty() && lo <= out.back().upper) {
      if (hi > out.back().upper) out.back().upper = std::move(hi);
      return;
    }
    out.push_back({std::move(lo), std::move(hi)});
  };
  for (std::size_t k = 0; k < p.pieces(); ++k) {
    const Rational a = p.piece_lower(k), b = p.piece_upper(k);
    const Rational& s = p.slopes()[k];
    if (s.sign() == 0) {
      if (p.intercepts()[k] == v) add(a, b);
      continue;
    }
    Rational x = (v - p.intercepts()[k]) / s;
    if (a <= x && x <= b) add(x, x);
  }
  return out;
}

struct Crossings {
  bool identical = false;       // p == q on the whole domain
  std::vector<Rational> points;  // where p - q changes sign or touches zero
};

inline Crossings crossings(const PiecewiseLinear& p, const PiecewiseLinear& q) {
  const PiecewiseLinear d = p - q;
  const auto& xs = d.breakpoints();
  const std::vector<Rational> ys = d.node_values();
  Crossings out;
  out.identical = std::all_of(ys.begin(), ys.end(), [](const Rational& y) { return y.sign() == 0; });
  if (out.identical) return out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (ys[k].sign() == 0) {
      out.points.push_back(xs[k]);
      continue;
    }
    if (k + 1 < xs.size() && ys[k].sign() * ys[k + 1].sign() < 0)
      out.points.push_back(xs[k] - ys[k] * (xs[k + 1] - xs[k]) / (ys[k + 1] - ys[k]));
  }
  return out;
}

// x -> max of p over [lower, x].
inline PiecewiseLinear running_max(const PiecewiseLinear& p) {
  const auto& xs = p.breakpoints();
  const std::vector<Rational> ys = p.node_values();
  std::vector<Rational> ox{xs[0]}, oy{ys[0]};
  Rational best = ys[0];
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (ys[k + 1] > best) {
      if (ys[k] < best) {
        // p climbs through the running maximum inside this piece.
        Rational c = xs[k] + (best - ys[k]) * (xs[k + 1] - xs[k]) / (ys[k + 1] - ys[k]);
        detail::push_node(ox, oy, c, best);
      }
      best = ys[k + 1];
    }
    detail::push_node(ox, oy, xs[k + 1], best);
  }
  return PiecewiseLinear::from_nodes(ox, oy);
}

// x -> max of p over [x, upper].
inline PiecewiseLinear suffix_max(const PiecewiseLinear& p) {
  const auto& xs = p.breakpoints();
  const std::vector<Rational> ys = p.node_values();
  const std::size_t n = xs.size();
  std::vector<Rational> ox{xs[n - 1]}, oy{ys[n - 1]};
  Rational best = ys[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    if (ys[k] > best) {
      if (ys[k + 1] < best) {
        Rational c = xs[k + 1] - (best - ys[k + 1]) * (xs[k + 1] - xs[k]) / (ys[k] - ys[k + 1]);
        detail::push_node(ox, oy, c, best);
      }
      best = ys[k];
    }
    detail::push_node(ox, oy, xs[k], best);
  }
  std::reverse(ox.begin(), ox.end());
  std::reverse(oy.begin(), oy.end());
  return PiecewiseLinear::from_nodes(ox, oy);
}

// x -> integral of g over [x - w/2, x + w/2] for x in [lo, hi].
// Breakpoints are the feasible endpoints plus every b ± w/2 inside (lo, hi).
inline PiecewiseLinear window_objective(const StepFunction& g, const Rational& width, const Rational& lo,
                                        const Rational& hi) {
  if (width.sign() <= 0 || width > Rational(1)) throw DomainError("window width " + width.str() + " outside (0,1]");
  if (hi < lo) throw DomainError("empty feasible interval [" + lo.str() + ", " + hi.str() + "]");
  const Rational half = width / Rational(2);
  if (lo < half || hi > Rational(1) - half)
    throw DomainError("feasible interval [" + lo.str() + ", " + hi.str() + "] exceeds [w/2, 1-w/2]");
  std::vector<Rational> xs{lo};
  for (const auto& b : g.breakpoints()) {
    for (Rational x : {b - half, b + half})
      if (lo < x && x < hi) xs.push_back(std::move(x));
  }
  if (hi != lo) xs.push_back(hi);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const auto& x : xs) ys.push_back(integrate(g, x - half, x + half));
  return PiecewiseLinear::from_nodes(xs, ys);
}

inline PiecewiseLinear window_objective(const StepFunction& g, const Rational& width) {
  const Rational half = width / Rational(2);
  return window_objective(g, width, half, Rational(1) - half);
}

}  // namespace hotelling
