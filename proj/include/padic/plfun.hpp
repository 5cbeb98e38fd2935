// Copyright 2026 The padic-radii Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "padic/log_value.hpp"

namespace padic {

// Interval with LogValue endpoints and open/closed flags.  A degenerate
// interval (lo == hi) must be closed on both sides.
struct Interval {
  LogValue lo, hi;
  bool lo_open = false, hi_open = false;

  static Interval closed(LogValue a, LogValue b) { return make(std::move(a), std::move(b), false, false); }
  static Interval open(LogValue a, LogValue b) { return make(std::move(a), std::move(b), true, true); }
  static Interval make(LogValue a, LogValue b, bool a_open, bool b_open) {
    if (b < a) fail("Interval", "lo > hi");
    if (a == b && (a_open || b_open)) fail("Interval", "degenerate interval must be closed");
    return Interval{std::move(a), std::move(b), a_open, b_open};
  }

  bool is_point() const { return lo == hi; }
  bool contains(const LogValue& x) const {
    if (x < lo || (x == lo && lo_open)) return false;
    if (hi < x || (x == hi && hi_open)) return false;
    return true;
  }
  LogValue midpoint() const { return (lo + hi) / 2; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_open == b.lo_open && a.hi_open == b.hi_open;
  }
  std::string str() const {
    return std::string(lo_open ? "(" : "[") + lo.str() + ", " + hi.str() + (hi_open ? ")" : "]");
  }
};

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  LogValue lo = a.lo, hi = a.hi;
  bool lo_open = a.lo_open, hi_open = a.hi_open;
  if (b.lo > lo) { lo = b.lo; lo_open = b.lo_open; }
  else if (b.lo == lo) lo_open = lo_open || b.lo_open;
  if (b.hi < hi) { hi = b.hi; hi_open = b.hi_open; }
  else if (b.hi == hi) hi_open = hi_open || b.hi_open;
  if (hi < lo || (lo == hi && (lo_open || hi_open))) return std::nullopt;
  return Interval{lo, hi, lo_open, hi_open};
}

struct Knot {
  LogValue x, y;
  friend bool operator==(const Knot& a, const Knot& b) { return a.x == b.x && a.y == b.y; }
};

// Continuous piecewise-affine function.  Knots always span the closure of
// the domain (open endpoints keep a knot holding the limit value), strictly
// increasing in x and canonical: no interior knot is collinear with its
// neighbours.  A point domain is a single knot.
class PLFun {
 public:
  PLFun(Interval dom, std::vector<Knot> knots) : dom_(std::move(dom)), knots_(std::move(knots)) {
    if (knots_.empty()) fail("PLFun", "no knots");
    for (size_t i = 0; i + 1 < knots_.size(); ++i)
      if (!(knots_[i].x < knots_[i + 1].x)) fail("PLFun", "knots not strictly increasing");
    if (!(knots_.front().x == dom_.lo) || !(knots_.back().x == dom_.hi))
      fail("PLFun", "knots do not span the domain closure");
    canonicalize();
  }

  static PLFun constant(Interval dom, const LogValue& y) {
    if (dom.is_point()) return PLFun(dom, {{dom.lo, y}});
    return PLFun(dom, {{dom.lo, y}, {dom.hi, y}});
  }
  // t -> intercept + slope*t
  static PLFun affine(Interval dom, const LogValue& intercept, const LogValue& slope) {
    if (dom.is_point()) return PLFun(dom, {{dom.lo, intercept + slope * dom.lo}});
    return PLFun(dom, {{dom.lo, intercept + slope * dom.lo}, {dom.hi, intercept + slope * dom.hi}});
  }
  static PLFun identity(Interval dom) { return affine(std::move(dom), LogValue(0), LogValue(1)); }

  const Interval& domain() const { return dom_; }
  const std::vector<Knot>& knots() const { return knots_; }

  LogValue eval(const LogValue& x) const {
    if (!dom_.contains(x)) fail("PLFun::eval", "argument " + x.str() + " outside domain " + dom_.str());
    return eval_closure(x);
  }

  // Interpolation over the closure; open endpoints give the limit value.
  LogValue eval_closure(const LogValue& x) const {
    if (x < dom_.lo || dom_.hi < x)
      fail("PLFun::eval_closure", "argument " + x.str() + " outside closure of " + dom_.str());
    size_t lo = 0, hi = knots_.size() - 1;
    if (x == knots_[hi].x) return knots_[hi].y;
    while (lo + 1 < hi) {
      const size_t mid = (lo + hi) / 2;
      if (knots_[mid].x <= x) lo = mid; else hi = mid;
    }
    const Knot& k1 = knots_[lo];
    if (x == k1.x) return k1.y;
    const Knot& k2 = knots_[lo + 1];
    return k1.y + (k2.y - k1.y) * ((x - k1.x) / (k2.x - k1.x));
  }

  size_t piece_count() const { return knots_.size() < 2 ? 0 : knots_.size() - 1; }
  LogValue piece_slope(size_t i) const {
    const LogValue dx = knots_[i + 1].x - knots_[i].x;
    return (knots_[i + 1].y - knots_[i].y) / dx;
  }
  LogValue terminal_slope() const {
    return knots_.size() < 2 ? LogValue(0) : piece_slope(knots_.size() - 2);
  }

  friend bool operator==(const PLFun& f, const PLFun& g) {
    return f.dom_ == g.dom_ && f.knots_ == g.knots_;
  }

  std::string str() const {
    std::string s = dom_.str() + " {";
    for (size_t i = 0; i < knots_.size(); ++i) {
      if (i) s += ", ";
      s += "(" + knots_[i].x.str() + ", " + knots_[i].y.str() + ")";
    }
    return s + "}";
  }
  friend std::ostream& operator<<(std::ostream& os, const PLFun& f) { return os << f.str(); }

 private:
  void canonicalize() {
    if (knots_.size() < 3) return;
    std::vector<Knot> out;
    out.push_back(knots_.front());
    for (size_t i = 1; i + 1 < knots_.size(); ++i) {
      const Knot& a = out.back();
      const Knot& b = knots_[i];
      const Knot& c = knots_[i + 1];
      // keep b unless a,b,c are collinear
      if (!((b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x)))
        out.push_back(b);
    }
    out.push_back(knots_.back());
    knots_ = std::move(out);
  }

  Interval dom_;
  std::vector<Knot> knots_;
};

enum class PLOp { Max, Min, Add };

// Pointwise max/min/sum on the (nondegenerate) common domain.  Max/Min
// insert exact crossing knots before choosing sides.
inline PLFun pl_combine(const PLFun& f, const PLFun& g, PLOp op) {
  const auto dom = intersect(f.domain(), g.domain());
  if (!dom || dom->is_point()) fail("pl_combine", "domains do not overlap in a nondegenerate interval");
  std::vector<LogValue> xs{dom->lo, dom->hi};
  for (const auto& k : f.knots())
    if (dom->lo < k.x && k.x < dom->hi) xs.push_back(k.x);
  for (const auto& k : g.knots())
    if (dom->lo < k.x && k.x < dom->hi) xs.push_back(k.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  if (op != PLOp::Add) {
    std::vector<LogValue> cross;
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
      const LogValue d1 = f.eval_closure(xs[i]) - g.eval_closure(xs[i]);
      const LogValue d2 = f.eval_closure(xs[i + 1]) - g.eval_closure(xs[i + 1]);
      if (d1.sign() * d2.sign() < 0) {
        // affine difference on [x_i, x_{i+1}]: root at x_i + dx * d1/(d1-d2)
        cross.push_back(xs[i] + (xs[i + 1] - xs[i]) * (d1 / (d1 - d2)));
      }
    }
    xs.insert(xs.end(), cross.begin(), cross.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  }

  std::vector<Knot> knots;
  knots.reserve(xs.size());
  for (const auto& x : xs) {
    const LogValue fy = f.eval_closure(x), gy = g.eval_closure(x);
    switch (op) {
      case PLOp::Max: knots.push_back({x, max(fy, gy)}); break;
      case PLOp::Min: knots.push_back({x, min(fy, gy)}); break;
      case PLOp::Add: knots.push_back({x, fy + gy}); break;
    }
  }
  return PLFun(*dom, std::move(knots));
}

// g(t) = c * f(a*t + b), a != 0.
inline PLFun pl_reparam(const PLFun& f, const mpq_class& a, const LogValue& b, const mpq_class& c) {
  if (a == 0) fail("pl_reparam", "a must be nonzero");
  const Interval& d = f.domain();
  LogValue lo = (d.lo - b) / a, hi = (d.hi - b) / a;
  bool lo_open = d.lo_open, hi_open = d.hi_open;
  if (a < 0) { std::swap(lo, hi); std::swap(lo_open, hi_open); }
  std::vector<Knot> knots;
  knots.reserve(f.knots().size());
  for (const auto& k : f.knots()) knots.push_back({(k.x - b) / a, k.y * c});
  if (a < 0) std::reverse(knots.begin(), knots.end());
  return PLFun(Interval::make(std::move(lo), std::move(hi), lo_open, hi_open), std::move(knots));
}

inline PLFun pl_restrict(const PLFun& f, const Interval& sub) {
  if (sub.lo < f.domain().lo || f.domain().hi < sub.hi)
    fail("pl_restrict", "subinterval leaves the domain closure");
  std::vector<Knot> knots;
  knots.push_back({sub.lo, f.eval_closure(sub.lo)});
  for (const auto& k : f.knots())
    if (sub.lo < k.x && k.x < sub.hi) knots.push_back(k);
  if (!sub.is_point()) knots.push_back({sub.hi, f.eval_closure(sub.hi)});
  return PLFun(sub, std::move(knots));
}

// Concatenation of adjacent pieces agreeing at the shared endpoint; the
// joint is interior afterwards, outer flags survive.
inline PLFun pl_concat(const PLFun& f, const PLFun& g) {
  if (!(f.domain().hi == g.domain().lo)) fail("pl_concat", "domains are not adjacent");
  if (!(f.eval_closure(f.domain().hi) == g.eval_closure(g.domain().lo)))
    fail("pl_concat", "boundary values differ at " + f.domain().hi.str());
  std::vector<Knot> knots = f.knots();
  knots.insert(knots.end(), g.knots().begin() + 1, g.knots().end());
  return PLFun(Interval::make(f.domain().lo, g.domain().hi, f.domain().lo_open, g.domain().hi_open),
               std::move(knots));
}

struct SlopePiece {
  LogValue slope;
  Interval where;
};

inline std::vector<SlopePiece> pl_slopes(const PLFun& f) {
  std::vector<SlopePiece> out;
  const auto& d = f.domain();
  for (size_t i = 0; i + 1 < f.knots().size(); ++i) {
    const bool first = i == 0, last = i + 2 == f.knots().size();
    out.push_back({f.piece_slope(i),
                   Interval::make(f.knots()[i].x, f.knots()[i + 1].x,
                                  first && d.lo_open, last && d.hi_open)});
  }
  if (out.empty()) out.push_back({LogValue(0), d});  // point domain
  return out;
}

// Slope of the piece immediately right (resp. left) of x.
inline LogValue pl_right_slope_at(const PLFun& f, const LogValue& x) {
  const auto& ks = f.knots();
  if (x < f.domain().lo || !(x < f.domain().hi))
    fail("pl_right_slope_at", "no piece to the right of " + x.str());
  for (size_t i = ks.size() - 1; i-- > 0;)
    if (!(x < ks[i].x)) return f.piece_slope(i);
  fail("pl_right_slope_at", "unreachable");
}

inline LogValue pl_left_slope_at(const PLFun& f, const LogValue& x) {
  const auto& ks = f.knots();
  if (!(f.domain().lo < x) || f.domain().hi < x)
    fail("pl_left_slope_at", "no piece to the left of " + x.str());
  for (size_t i = 0; i + 1 < ks.size(); ++i)
    if (!(ks[i + 1].x < x)) return f.piece_slope(i);
  fail("pl_left_slope_at", "unreachable");
}

inline bool pl_is_convex(const PLFun& f) {
  for (size_t i = 0; i + 2 < f.knots().size(); ++i)
    if (f.piece_slope(i + 1) < f.piece_slope(i)) return false;
  return true;
}

// True when every slope lies in (1/n!) * Z (and has no sqrt2 part).
inline bool pl_slope_denominators_ok(const PLFun& f, unsigned n) {
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  for (size_t i = 0; i + 1 < f.knots().size(); ++i) {
    const LogValue s = f.piece_slope(i);
    if (!s.is_rational()) return false;
    if (!mpz_divisible_p(fact.get_mpz_t(), s.rat().get_den().get_mpz_t())) return false;
  }
  return true;
}

// f < 0 throughout the domain, where an open endpoint only needs the limit
// to be <= 0 with strict negativity immediately inside.
inline bool pl_negative_on_domain(const PLFun& f) {
  const auto& ks = f.knots();
  const auto& d = f.domain();
  for (size_t i = 0; i < ks.size(); ++i) {
    const int s = ks[i].y.sign();
    if (s < 0) continue;
    const bool at_open_lo = i == 0 && d.lo_open;
    const bool at_open_hi = i + 1 == ks.size() && d.hi_open;
    if (s > 0 || !(at_open_lo || at_open_hi)) return false;
    if (d.is_point()) return false;
    // limit hits zero at an open endpoint: the adjacent piece must dive
    // below zero on the inside.
    if (at_open_lo && !(f.piece_slope(0).sign() < 0)) return false;
    if (at_open_hi && !(f.piece_slope(ks.size() - 2).sign() > 0)) return false;
  }
  return true;
}

}  // namespace padic
