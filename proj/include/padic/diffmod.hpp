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
#include <string>
#include <utility>
#include <vector>

#include "padic/error.hpp"
#include "padic/log_value.hpp"
#include "padic/newton.hpp"
#include "padic/plfun.hpp"
#include "padic/rational_util.hpp"

namespace padic {

// A cyclic differential operator P_n D^n + ... + P_1 D + P_0 over the open
// unit disc, described by the valuations of its coefficients.  coeffs[i] is
// the datum for P_i; absent coefficients are left disengaged.  The leading
// coefficient P_n must be present, and usually carries a single term of
// valuation zero (a monic operator).
struct CyclicOperator {
  unsigned long p = 2;
  std::vector<std::optional<ValuedPoly>> coeffs;

  size_t rank() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

inline CyclicOperator make_cyclic(unsigned long p,
                                  std::vector<std::optional<ValuedPoly>> coeffs) {
  if (p < 2) fail("make_cyclic", "p must be at least 2");
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) fail("make_cyclic", "p must be prime");
  if (coeffs.size() < 2) fail("make_cyclic", "operator must have positive order");
  if (!coeffs.back().has_value())
    fail("make_cyclic", "leading coefficient must be present");
  return CyclicOperator{p, std::move(coeffs)};
}

// One normalized unit of p-adic slack: 1/(p-1).
inline mpq_class pi_shift(unsigned long p) {
  return make_rat(1, static_cast<long>(p) - 1);
}

enum class ProfileTag { Exact, Bounded };

// A segment of one subsidiary-radius entry.  Exact segments carry the value
// in `lo`; Bounded segments carry a two-sided envelope [lo, hi].
struct ProfileSegment {
  Interval where;
  ProfileTag tag = ProfileTag::Bounded;
  PLFun lo;
  std::optional<PLFun> hi;

  bool exact() const { return tag == ProfileTag::Exact; }
};

// Subsidiary radii of a rank-n module on a window of the coordinate
// r_hat = -log_p(radius).  entries[0] describes the largest entry f_1,
// entries[n-1] the smallest.  Each entry is a list of consecutive segments
// covering the window.  `widened` is set when a direct sum had to coarsen
// envelopes because the interleaving of summands was ambiguous.
struct RadiiProfile {
  unsigned long p = 2;
  Interval window = Interval::closed(LogValue(0), LogValue(0));
  std::vector<std::vector<ProfileSegment>> entries;
  bool widened = false;

  size_t rank() const { return entries.size(); }
};

namespace detail {

// Restrict a function to a cell inside the closure of its domain, keeping
// the cell's own endpoint flags.
inline PLFun pl_clip(const PLFun& f, const Interval& cell) {
  std::vector<Knot> ks;
  ks.push_back({cell.lo, f.eval_closure(cell.lo)});
  for (const Knot& k : f.knots())
    if (cell.lo < k.x && k.x < cell.hi) ks.push_back(k);
  if (!cell.is_point()) ks.push_back({cell.hi, f.eval_closure(cell.hi)});
  return PLFun(cell, ks);
}

// Append a segment, merging with the previous one when tags and boundary
// values agree.  Segments arrive in window order sharing endpoints.
inline void push_segment(std::vector<ProfileSegment>& segs, ProfileSegment s) {
  if (!segs.empty()) {
    ProfileSegment& prev = segs.back();
    bool adjacent = prev.where.hi == s.where.lo &&
                    (!prev.where.hi_open || !s.where.lo_open);
    if (adjacent && prev.tag == s.tag &&
        prev.lo.eval_closure(prev.where.hi) == s.lo.eval_closure(s.where.lo)) {
      prev.lo = pl_concat(prev.lo, s.lo);
      if (prev.hi) prev.hi = pl_concat(*prev.hi, *s.hi);
      prev.where = Interval::make(prev.where.lo, s.where.hi, prev.where.lo_open,
                                  s.where.hi_open);
      return;
    }
  }
  segs.push_back(std::move(s));
}

// When an Exact segment touches a Bounded neighbour, the shared boundary
// point belongs to the Bounded side: at the transition the exact formula
// degenerates to the trivial bound.
inline void shave_transitions(std::vector<ProfileSegment>& segs) {
  auto reflag = [](ProfileSegment& s, bool lo_open, bool hi_open) {
    s.where = Interval::make(s.where.lo, s.where.hi, lo_open, hi_open);
    s.lo = PLFun(s.where, s.lo.knots());
    if (s.hi) s.hi = PLFun(s.where, s.hi->knots());
  };
  for (size_t i = 0; i + 1 < segs.size(); ++i) {
    ProfileSegment& a = segs[i];
    ProfileSegment& b = segs[i + 1];
    if (a.where.hi == b.where.lo && !a.where.hi_open && !b.where.lo_open) {
      if (a.exact() && !b.exact())
        reflag(a, a.where.lo_open, true);
      else if (!a.exact() && b.exact())
        reflag(b, true, b.where.hi_open);
    }
  }
}

inline ProfileSegment bounded_segment(const Interval& cell, const mpq_class& shift) {
  return ProfileSegment{cell, ProfileTag::Bounded, PLFun::identity(cell),
                        PLFun::affine(cell, LogValue(shift), LogValue(1))};
}

// True when f <= g holds everywhere on their (equal) domain.
inline bool pl_le(const PLFun& f, const PLFun& g) {
  return pl_combine(f, g, PLOp::Max) == g;
}

}  // namespace detail

// Subsidiary radii of a cyclic operator on `window` (a subinterval of
// (0, +inf) in the coordinate r_hat).  Where an edge of the parametric
// Newton hull of the coefficient valuations stays above the visibility
// threshold slope > r_hat, the corresponding entries are Exact with value
// 1/(p-1) + slope; all other entries carry the trivial envelope
// [r_hat, r_hat + 1/(p-1)].
inline RadiiProfile radii_profile(const CyclicOperator& op, const Interval& window) {
  if (op.coeffs.size() < 2 || !op.coeffs.back().has_value())
    fail("radii_profile", "operator must have a present leading coefficient");
  if (window.lo.sign() < 0 || (window.lo.sign() == 0 && !window.lo_open))
    fail("radii_profile", "window must lie in (0, +inf)");
  const size_t n = op.rank();
  const LogValue shift{pi_shift(op.p)};

  std::vector<std::pair<long, ValuedPoly>> present;
  for (size_t i = 0; i < op.coeffs.size(); ++i)
    if (op.coeffs[i] && !op.coeffs[i]->is_zero())
      present.emplace_back(static_cast<long>(i), *op.coeffs[i]);

  RadiiProfile out;
  out.p = op.p;
  out.window = window;
  out.entries.assign(n, {});

  if (present.size() < 2) {
    // Only one height: the polygon is a point and nothing is visible.
    for (size_t i = 0; i < n; ++i)
      out.entries[i].push_back(detail::bounded_segment(window, pi_shift(op.p)));
    return out;
  }

  ParamHull hull = parametric_hull(present, window);

  for (const HullCell& cell : hull.cells) {
    // Split the cell wherever an edge crosses the visibility threshold
    // slope(r) = r, i.e. at roots of c0 + (c1 - 1) r.
    std::vector<LogValue> cuts{cell.where.lo, cell.where.hi};
    for (const AffineEdge& e : cell.edges) {
      const LogValue den = e.c1 - LogValue(1);
      if (den.sign() != 0) {
        const LogValue root = (LogValue(0) - e.c0) / den;
        if (cell.where.lo < root && root < cell.where.hi) cuts.push_back(root);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
      const bool lo_open = cuts[c] == window.lo && window.lo_open;
      const bool hi_open = cuts[c + 1] == window.hi && window.hi_open;
      const Interval sub = Interval::make(cuts[c], cuts[c + 1], lo_open, hi_open);
      const LogValue mid = sub.midpoint();

      // Visible edges, steepest first, expanded by multiplicity.
      std::vector<AffineEdge> visible;
      for (const AffineEdge& e : cell.edges)
        if (mid < e.at(mid)) visible.push_back(e);
      std::sort(visible.begin(), visible.end(),
                [&](const AffineEdge& a, const AffineEdge& b) {
                  return b.at(mid) < a.at(mid);
                });

      size_t idx = 0;
      for (const AffineEdge& e : visible) {
        const PLFun val = PLFun::affine(sub, shift + e.c0, e.c1);
        for (long m = 0; m < e.mult && idx < n; ++m, ++idx)
          detail::push_segment(out.entries[idx],
                               ProfileSegment{sub, ProfileTag::Exact, val, {}});
      }
      for (; idx < n; ++idx)
        detail::push_segment(out.entries[idx],
                             detail::bounded_segment(sub, pi_shift(op.p)));
    }
  }

  for (auto& segs : out.entries) detail::shave_transitions(segs);
  return out;
}

// Radius profile of the rank-one module attached to a rational datum r with
// term valuations (j, v_j): f(r_hat) = max(r_hat, max_j(-v_j - j r_hat)).
// The datum is admissible only when no exponent j has j + 1 divisible by p.
inline PLFun dwork_profile(const ValuedPoly& r, unsigned long p,
                           const Interval& window) {
  if (p < 2) fail("dwork_profile", "p must be at least 2");
  for (const auto& t : r.terms()) {
    long rem = (t.exp + 1) % static_cast<long>(p);
    if (rem < 0) rem += static_cast<long>(p);
    if (rem == 0)
      fail("dwork_profile", "datum has a term of exponent " +
                                std::to_string(t.exp) +
                                " with p dividing exponent+1");
  }
  PLFun acc = PLFun::identity(window);
  for (const auto& t : r.terms())
    acc = pl_combine(acc,
                     PLFun::affine(window, LogValue(0) - t.val,
                                   LogValue(-t.exp)),
                     PLOp::Max);
  return acc;
}

// Cyclic operator T - pi*r whose radius profile is dwork_profile(r): the
// order-one operator with P_1 = 1 and P_0 = -pi*r, the latter carrying the
// extra valuation 1/(p-1) on every term of r.
inline CyclicOperator dwork_operator(const ValuedPoly& r, unsigned long p) {
  std::vector<ValuedPoly::Term> lower;
  for (const auto& t : r.terms())
    lower.push_back({t.exp, t.val + LogValue(pi_shift(p))});
  std::vector<std::optional<ValuedPoly>> coeffs;
  coeffs.push_back(lower.empty() ? std::optional<ValuedPoly>()
                                 : std::optional<ValuedPoly>(ValuedPoly(std::move(lower))));
  coeffs.push_back(ValuedPoly({{0, LogValue(0)}}));
  return make_cyclic(p, std::move(coeffs));
}

// Operator of the pullback along x -> x^p of the rank-one module with datum
// r: each datum term (j, v) becomes a P_0 term (p j + p - 1, v + 1 + 1/(p-1)).
// The transformed datum is never admissible in the rank-one sense, so the
// profile of the pullback must be read off this operator instead.
inline CyclicOperator frobenius_pullback_operator(const ValuedPoly& r,
                                                  unsigned long p) {
  const long pl = static_cast<long>(p);
  std::vector<ValuedPoly::Term> lower;
  for (const auto& t : r.terms())
    lower.push_back({pl * t.exp + pl - 1, t.val + LogValue(1) + LogValue(pi_shift(p))});
  std::vector<std::optional<ValuedPoly>> coeffs;
  coeffs.push_back(lower.empty() ? std::optional<ValuedPoly>()
                                 : std::optional<ValuedPoly>(ValuedPoly(std::move(lower))));
  coeffs.push_back(ValuedPoly({{0, LogValue(0)}}));
  return make_cyclic(p, std::move(coeffs));
}

// Wrap entry functions known exactly everywhere (e.g. a rank-one formula)
// into a profile.  Entries must share one domain and be pointwise
// nonincreasing.
inline RadiiProfile exact_profile(unsigned long p, const std::vector<PLFun>& entries) {
  if (entries.empty()) fail("exact_profile", "need at least one entry");
  RadiiProfile out;
  out.p = p;
  out.window = entries.front().domain();
  for (size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].domain() == out.window))
      fail("exact_profile", "entries live on different windows");
    if (i > 0 && !detail::pl_le(entries[i], entries[i - 1]))
      fail("exact_profile", "entries must be pointwise nonincreasing");
    out.entries.push_back(
        {ProfileSegment{out.window, ProfileTag::Exact, entries[i], {}}});
  }
  return out;
}

// Pullback along x -> x^m with m prime to p: each entry transforms by
// g(u) = f(m u) - (m - 1) u on window/m, tags preserved.
inline RadiiProfile tame_transform(const RadiiProfile& in, unsigned long m) {
  if (m == 0 || m % in.p == 0)
    fail("tame_transform", "degree must be nonzero and prime to p");
  const long ml = static_cast<long>(m);
  auto map = [&](const PLFun& f) {
    PLFun g = pl_reparam(f, mpq_class(ml), LogValue(0), mpq_class(1));
    PLFun ramp = PLFun::affine(g.domain(), LogValue(0), LogValue(1 - ml));
    return pl_combine(g, ramp, PLOp::Add);
  };
  auto map_interval = [&](const Interval& iv) {
    return Interval::make(iv.lo / ml, iv.hi / ml, iv.lo_open, iv.hi_open);
  };
  RadiiProfile out;
  out.p = in.p;
  out.window = map_interval(in.window);
  out.widened = in.widened;
  for (const auto& segs : in.entries) {
    std::vector<ProfileSegment> mapped;
    for (const auto& s : segs)
      mapped.push_back(ProfileSegment{
          map_interval(s.where), s.tag, map(s.lo),
          s.hi ? std::optional<PLFun>(map(*s.hi)) : std::nullopt});
    out.entries.push_back(std::move(mapped));
  }
  return out;
}

// One entry as a single exact function on `window`, if the profile is Exact
// there; nullopt otherwise.
inline std::optional<PLFun> entry_exact_fun(const RadiiProfile& prof, size_t idx,
                                            const Interval& window) {
  if (idx >= prof.rank()) fail("entry_exact_fun", "entry index out of range");
  std::optional<PLFun> acc;
  for (const ProfileSegment& s : prof.entries[idx]) {
    auto cut = intersect(s.where, window);
    if (!cut) continue;
    if (cut->is_point() && !window.is_point()) {
      // A touching endpoint need not be exact; interior coverage decides.
      if (!s.exact()) continue;
    }
    if (!s.exact()) return std::nullopt;
    PLFun piece = pl_restrict(s.lo, *cut);
    acc = acc ? pl_concat(*acc, piece) : piece;
  }
  if (!acc || !(acc->domain() == window)) return std::nullopt;
  return acc;
}

// Whether a Frobenius antecedent exists over `window`: the largest entry
// must be exactly known and stay strictly below r_hat + 1/(p-1), with the
// usual limit allowance at open endpoints.
inline bool antecedent_exists(const RadiiProfile& prof, const Interval& window) {
  auto f1 = entry_exact_fun(prof, 0, window);
  if (!f1) fail("antecedent_exists", "largest entry is not exact on the window");
  PLFun threshold = PLFun::affine(window, LogValue(-pi_shift(prof.p)), LogValue(-1));
  PLFun diff = pl_combine(*f1, threshold, PLOp::Add);  // f1 - r_hat - 1/(p-1)
  return pl_negative_on_domain(diff);
}

// Frobenius antecedent: descent along x -> x^p.  The profile of the
// antecedent on p * window is g(t) = p f(t / p) entrywise; envelopes map the
// same way.
inline RadiiProfile antecedent_transform(const RadiiProfile& in,
                                         const Interval& window) {
  if (!antecedent_exists(in, window))
    fail("antecedent_transform", "no antecedent exists on the window");
  const long p = static_cast<long>(in.p);
  auto map = [&](const PLFun& f) {
    return pl_reparam(f, mpq_class(1, p), LogValue(0), mpq_class(p));
  };
  auto map_interval = [&](const Interval& iv) {
    return Interval::make(iv.lo * p, iv.hi * p, iv.lo_open, iv.hi_open);
  };
  RadiiProfile out;
  out.p = in.p;
  out.window = map_interval(window);
  out.widened = in.widened;
  for (size_t i = 0; i < in.rank(); ++i) {
    std::vector<ProfileSegment> mapped;
    for (const ProfileSegment& s : in.entries[i]) {
      auto cut = intersect(s.where, window);
      if (!cut || (cut->is_point() && !window.is_point())) continue;
      mapped.push_back(ProfileSegment{
          map_interval(*cut), s.tag, map(pl_restrict(s.lo, *cut)),
          s.hi ? std::optional<PLFun>(map(pl_restrict(*s.hi, *cut))) : std::nullopt});
    }
    out.entries.push_back(std::move(mapped));
  }
  return out;
}

// Radii at a single point r_hat, sorted descending.
struct RadiusMultiset {
  unsigned long p = 2;
  LogValue r_hat;
  std::vector<LogValue> values;
};

inline RadiusMultiset make_multiset(unsigned long p, LogValue r_hat,
                                    std::vector<LogValue> values) {
  for (const LogValue& v : values)
    if (v < r_hat) fail("make_multiset", "radius entry below r_hat");
  std::sort(values.begin(), values.end(),
            [](const LogValue& a, const LogValue& b) { return b < a; });
  return RadiusMultiset{p, std::move(r_hat), std::move(values)};
}

// Pushforward along x -> x^p of the radii at r_hat in (0, 1/(p-1)): each
// entry f below 1/(p-1) contributes {p f} together with p-1 copies of
// p/(p-1); entries at or above 1/(p-1) contribute p copies of f + 1.  The
// result lives at p * r_hat.
inline RadiusMultiset descendant_multiset(const RadiusMultiset& in) {
  const LogValue shift{pi_shift(in.p)};
  if (in.r_hat.sign() <= 0 || !(in.r_hat < shift))
    fail("descendant_multiset", "r_hat must lie strictly inside (0, 1/(p-1))");
  const long p = static_cast<long>(in.p);
  std::vector<LogValue> out;
  for (const LogValue& f : in.values) {
    if (f < in.r_hat) fail("descendant_multiset", "radius entry below r_hat");
    if (f < shift) {
      out.push_back(f * p);
      for (long k = 1; k < p; ++k) out.push_back(shift * p);
    } else {
      for (long k = 0; k < p; ++k) out.push_back(f + LogValue(1));
    }
  }
  return make_multiset(in.p, in.r_hat * p, std::move(out));
}

struct DescendantCheck {
  bool sizes_ok = false;
  bool point_ok = false;
  bool premise_ok = false;  // f_i < 1/(p-1), required for the identities
  bool sum_ok = false;
  bool entry_ok = false;

  bool ok() const {
    return sizes_ok && point_ok && premise_ok && sum_ok && entry_ok;
  }
};

// Verify the partial-sum and single-entry identities tying a multiset to its
// descendant at index i (1-based): with n = rank and m = i + (p-1) n,
//   sum_{j<=m} out_j = p n + p sum_{j<=i} in_j   and   out_m = p in_i.
inline DescendantCheck descendant_sum_check(const RadiusMultiset& in,
                                            const RadiusMultiset& out, size_t i) {
  DescendantCheck c;
  const size_t n = in.values.size();
  const long p = static_cast<long>(in.p);
  if (i == 0 || i > n) fail("descendant_sum_check", "index out of range");
  c.sizes_ok = out.values.size() == n * in.p;
  c.point_ok = out.r_hat == in.r_hat * p;
  c.premise_ok = in.values[i - 1] < LogValue(pi_shift(in.p));
  if (!c.sizes_ok) return c;
  const size_t m = i + (in.p - 1) * n;
  LogValue lhs(0);
  for (size_t j = 0; j < m; ++j) lhs = lhs + out.values[j];
  LogValue rhs(static_cast<long>(in.p * n));
  for (size_t j = 0; j < i; ++j) rhs = rhs + in.values[j] * p;
  c.sum_ok = lhs == rhs;
  c.entry_ok = out.values[m - 1] == in.values[i - 1] * p;
  return c;
}

namespace detail {

struct SumItem {
  ProfileTag tag;
  PLFun lo;
  PLFun hi;  // equals lo for Exact
};

}  // namespace detail

// Merge two profiles into the profile of the direct sum on the overlap of
// their windows.  Entries interleave in descending order; where the order
// between two segments cannot be decided from their envelopes, the affected
// run is replaced by its pointwise envelope hull and `widened` is set.
inline RadiiProfile direct_sum_profile(const RadiiProfile& a,
                                       const RadiiProfile& b) {
  if (a.p != b.p) fail("direct_sum_profile", "summands have different p");
  auto common = intersect(a.window, b.window);
  if (!common || common->is_point())
    fail("direct_sum_profile", "windows do not overlap");

  // Cut points: segment boundaries and knots of both profiles, plus the
  // crossings of every pair of functions drawn from either (so that the
  // pointwise order is constant on each cell).
  std::vector<LogValue> cuts{common->lo, common->hi};
  std::vector<PLFun> fns;
  auto add_profile = [&](const RadiiProfile& pr) {
    for (const auto& segs : pr.entries)
      for (const ProfileSegment& s : segs) {
        auto cut = intersect(s.where, *common);
        if (!cut || cut->is_point()) continue;
        for (const LogValue& x : {cut->lo, cut->hi})
          if (common->lo < x && x < common->hi) cuts.push_back(x);
        Interval span = Interval::closed(cut->lo, cut->hi);
        fns.push_back(detail::pl_clip(s.lo, span));
        if (s.hi) fns.push_back(detail::pl_clip(*s.hi, span));
      }
  };
  add_profile(a);
  add_profile(b);
  for (size_t i = 0; i < fns.size(); ++i)
    for (size_t j = i + 1; j < fns.size(); ++j) {
      auto ov = intersect(fns[i].domain(), fns[j].domain());
      if (!ov) continue;
      Interval span = Interval::closed(ov->lo, ov->hi);
      if (span.is_point()) continue;
      PLFun mx = pl_combine(detail::pl_clip(fns[i], span),
                            detail::pl_clip(fns[j], span), PLOp::Max);
      for (const Knot& k : mx.knots())
        if (common->lo < k.x && k.x < common->hi) cuts.push_back(k.x);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  RadiiProfile out;
  out.p = a.p;
  out.window = *common;
  out.widened = a.widened || b.widened;
  out.entries.assign(a.rank() + b.rank(), {});

  auto collect = [&](const RadiiProfile& pr, const Interval& cell,
                     std::vector<detail::SumItem>& items) {
    for (const auto& segs : pr.entries)
      for (const ProfileSegment& s : segs) {
        if (cell.lo < s.where.lo || s.where.hi < cell.hi) continue;
        items.push_back(detail::SumItem{s.tag, detail::pl_clip(s.lo, cell),
                                        detail::pl_clip(s.hi ? *s.hi : s.lo, cell)});
        break;
      }
  };

  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    const bool lo_open = cuts[c] == common->lo && common->lo_open;
    const bool hi_open = cuts[c + 1] == common->hi && common->hi_open;
    const Interval cell = Interval::make(cuts[c], cuts[c + 1], lo_open, hi_open);
    std::vector<detail::SumItem> items;
    collect(a, cell, items);
    collect(b, cell, items);
    if (items.size() != out.rank())
      fail("direct_sum_profile", "segments do not cover a cell");

    const LogValue mid = cell.midpoint();
    std::stable_sort(items.begin(), items.end(),
                     [&](const detail::SumItem& x, const detail::SumItem& y) {
                       LogValue mx = x.lo.eval_closure(mid) + x.hi.eval_closure(mid);
                       LogValue my = y.lo.eval_closure(mid) + y.hi.eval_closure(mid);
                       return my < mx;
                     });

    // Adjacent order is certain when the lower one's upper bound stays below
    // the upper one's lower bound, or when both carry the same data.
    std::vector<char> fuzzy(items.size(), 0);
    for (size_t j = 0; j + 1 < items.size(); ++j) {
      const auto& x = items[j];
      const auto& y = items[j + 1];
      bool same = x.tag == y.tag && x.lo == y.lo && x.hi == y.hi;
      if (!same && !detail::pl_le(y.hi, x.lo)) fuzzy[j] = fuzzy[j + 1] = 1;
    }
    for (size_t j = 0; j < items.size();) {
      if (!fuzzy[j]) {
        detail::push_segment(
            out.entries[j],
            ProfileSegment{cell, items[j].tag, items[j].lo,
                           items[j].tag == ProfileTag::Bounded
                               ? std::optional<PLFun>(items[j].hi)
                               : std::nullopt});
        ++j;
        continue;
      }
      size_t k = j;
      PLFun lo = items[j].lo, hi = items[j].hi;
      while (k < items.size() && fuzzy[k]) {
        lo = pl_combine(lo, items[k].lo, PLOp::Min);
        hi = pl_combine(hi, items[k].hi, PLOp::Max);
        ++k;
      }
      out.widened = true;
      for (size_t t = j; t < k; ++t)
        detail::push_segment(out.entries[t],
                             ProfileSegment{cell, ProfileTag::Bounded, lo, hi});
      j = k;
    }
  }

  for (auto& segs : out.entries) detail::shave_transitions(segs);
  return out;
}

// Entries i and i+1 (1-based i) are separated over `window` when both are
// exact there and f_i - f_{i+1} is strictly positive, with the usual limit
// allowance at open endpoints.
inline bool is_separable(const RadiiProfile& prof, size_t i,
                         const Interval& window) {
  if (i == 0 || i >= prof.rank()) fail("is_separable", "index out of range");
  auto hif = entry_exact_fun(prof, i - 1, window);
  auto lof = entry_exact_fun(prof, i, window);
  if (!hif || !lof) return false;
  PLFun neg_hi = pl_reparam(*hif, mpq_class(1), LogValue(0), mpq_class(-1));
  return pl_negative_on_domain(pl_combine(*lof, neg_hi, PLOp::Add));
}

struct VariationReport {
  bool slopes_ok = true;     // exact slopes lie in (1/n!) Z
  bool convexity_ok = true;  // partial sums convex where exact
  bool boundary_ok = true;   // no increase toward a zero endpoint while nontrivial
  bool bounds_ok = true;     // f_i >= r_hat throughout

  bool ok() const { return slopes_ok && convexity_ok && boundary_ok && bounds_ok; }
};

// Check the structural constraints a genuine radius profile must satisfy.
// `window_reaches_zero` marks profiles whose window has infimum 0, where the
// partial sums additionally cannot increase on a piece where the top entry
// exceeds r_hat.
inline VariationReport check_variation(const RadiiProfile& prof,
                                       bool window_reaches_zero) {
  VariationReport rep;
  const long n = static_cast<long>(prof.rank());
  for (const auto& segs : prof.entries)
    for (const ProfileSegment& s : segs) {
      if (s.exact() && !pl_slope_denominators_ok(s.lo, n)) rep.slopes_ok = false;
      PLFun neg_id = PLFun::affine(s.where, LogValue(0), LogValue(-1));
      PLFun d = pl_combine(s.lo, neg_id, PLOp::Add);  // f - r_hat
      for (const Knot& k : d.knots())
        if (k.y.sign() < 0) rep.bounds_ok = false;
    }

  // Partial sums F_i on maximal windows where entries 1..i are all exact.
  for (size_t i = 0; i < prof.rank(); ++i) {
    std::vector<Interval> cover;
    bool first = true;
    for (size_t j = 0; j <= i; ++j) {
      std::vector<Interval> merged;
      for (const ProfileSegment& s : prof.entries[j]) {
        if (!s.exact()) continue;
        if (!merged.empty() && merged.back().hi == s.where.lo &&
            (!merged.back().hi_open || !s.where.lo_open))
          merged.back() = Interval::make(merged.back().lo, s.where.hi,
                                         merged.back().lo_open, s.where.hi_open);
        else
          merged.push_back(s.where);
      }
      if (first) {
        cover = merged;
        first = false;
      } else {
        std::vector<Interval> next;
        for (const Interval& x : cover)
          for (const Interval& y : merged)
            if (auto z = intersect(x, y); z && !z->is_point())
              next.push_back(*z);
        cover = next;
      }
    }
    for (const Interval& cell : cover) {
      std::optional<PLFun> sum;
      std::optional<PLFun> top;
      for (size_t j = 0; j <= i; ++j) {
        auto f = entry_exact_fun(prof, j, cell);
        if (!f) {
          sum.reset();
          break;
        }
        sum = sum ? pl_combine(*sum, *f, PLOp::Add) : *f;
        if (j == i) top = *f;
      }
      if (!sum) continue;
      if (!pl_is_convex(*sum)) rep.convexity_ok = false;
      if (window_reaches_zero && top) {
        PLFun neg_id = PLFun::affine(cell, LogValue(0), LogValue(-1));
        PLFun gap = pl_combine(*top, neg_id, PLOp::Add);  // f_i - r_hat
        for (const SlopePiece& sp : pl_slopes(*sum)) {
          if (!(LogValue(0) < sp.slope)) continue;
          PLFun g = detail::pl_clip(gap, sp.where);
          for (const Knot& k : g.knots())
            if (k.y.sign() > 0) rep.boundary_ok = false;
        }
      }
    }
  }
  return rep;
}

enum class RobbaAnswer { Yes, No, Unknown };

// Whether every radius equals r_hat over the window.  Exact entries decide;
// Bounded envelopes always contain the trivial answer, so a profile with
// Bounded parts can refute but never confirm.
inline RobbaAnswer robba_condition(const RadiiProfile& prof,
                                   const Interval& window) {
  auto overlap = intersect(prof.window, window);
  if (!overlap || !(*overlap == window))
    fail("robba_condition", "window escapes the profile");
  bool all_exact = true;
  for (size_t i = 0; i < prof.rank(); ++i)
    for (const ProfileSegment& s : prof.entries[i]) {
      auto cut = intersect(s.where, window);
      if (!cut || cut->is_point()) continue;
      if (!s.exact()) {
        all_exact = false;
        continue;
      }
      if (!(pl_restrict(s.lo, *cut) == PLFun::identity(*cut)))
        return RobbaAnswer::No;
    }
  return all_exact ? RobbaAnswer::Yes : RobbaAnswer::Unknown;
}

struct SubharmonicityReport {
  LogValue base_slope;                     // left slope at 0 of the base profile
  std::vector<LogValue> translate_slopes;  // right slopes at 0, per translate
  bool ok = false;
};

// Harmonicity-type inequality for a rational rank-one datum at the boundary
// point r_hat = 0: the inward slope of the base profile is at most the sum
// of the outward slopes of its translates.  Translates must be p-integral
// and pairwise distinct mod p.
inline SubharmonicityReport check_subharmonicity(const RationalLaurent& r,
                                                 unsigned long p,
                                                 const std::vector<mpq_class>& zs) {
  if (zs.empty()) fail("check_subharmonicity", "need at least one translate");
  std::vector<unsigned long> residues;
  for (const mpq_class& z : zs) {
    if (z != 0 && rat_pval(z, p) < 0)
      fail("check_subharmonicity", "translate is not p-integral");
    mpz_class num = mpz_class(z.get_num()) % static_cast<long>(p);
    if (num < 0) num += static_cast<long>(p);
    mpz_class den = mpz_class(z.get_den()) % static_cast<long>(p);
    mpz_class inv, pz(static_cast<long>(p));
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
      fail("check_subharmonicity", "translate is not p-integral");
    residues.push_back(
        mpz_class(num * inv % pz).get_ui());
  }
  std::sort(residues.begin(), residues.end());
  if (std::adjacent_find(residues.begin(), residues.end()) != residues.end())
    fail("check_subharmonicity", "translates collide mod p");

  const Interval window = Interval::closed(LogValue(-1), LogValue(1));
  SubharmonicityReport rep;
  PLFun base = dwork_profile(r.to_valued(p), p, window);
  rep.base_slope = pl_left_slope_at(base, LogValue(0));
  LogValue total(0);
  for (const mpq_class& z : zs) {
    PLFun f = dwork_profile(r.translated(z).to_valued(p), p, window);
    LogValue s = pl_right_slope_at(f, LogValue(0));
    rep.translate_slopes.push_back(s);
    total = total + s;
  }
  rep.ok = !(total < rep.base_slope);
  return rep;
}

}  // namespace padic
