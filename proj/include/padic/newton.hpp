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
#include <map>
#include <utility>
#include <vector>

#include "padic/log_value.hpp"
#include "padic/plfun.hpp"

namespace padic {

// Polynomial skeleton carrying only term valuations: terms (e, v) with
// distinct integer exponents e and v the valuation of the coefficient.
class ValuedPoly {
 public:
  struct Term {
    long exp;
    LogValue val;
  };

  ValuedPoly() = default;
  explicit ValuedPoly(std::vector<Term> terms) : terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    for (size_t i = 0; i + 1 < terms_.size(); ++i)
      if (terms_[i].exp == terms_[i + 1].exp)
        fail("ValuedPoly", "duplicate exponent " + std::to_string(terms_[i].exp));
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

 private:
  std::vector<Term> terms_;
};

// Gauss valuation -log_p |P|_{p^-r}: min over terms of v + e*r.
inline LogValue gauss_val(const ValuedPoly& P, const LogValue& r) {
  if (P.is_zero()) fail("gauss_val", "zero polynomial has no Gauss valuation");
  LogValue best = P.terms().front().val + LogValue(P.terms().front().exp) * r;
  for (size_t i = 1; i < P.terms().size(); ++i) {
    const LogValue cand = P.terms()[i].val + LogValue(P.terms()[i].exp) * r;
    if (cand < best) best = cand;
  }
  return best;
}

// The same Gauss valuation as a function of r on a window: the lower
// envelope of the term lines, concave piecewise affine.
inline PLFun gauss_val_fun(const ValuedPoly& P, const Interval& window) {
  if (P.is_zero()) fail("gauss_val_fun", "zero polynomial has no Gauss valuation");
  PLFun env = PLFun::affine(window, P.terms().front().val, LogValue(P.terms().front().exp));
  for (size_t i = 1; i < P.terms().size(); ++i)
    env = pl_combine(env, PLFun::affine(window, P.terms()[i].val, LogValue(P.terms()[i].exp)),
                     PLOp::Min);
  return env;
}

// Bivariate skeleton for the two-radius Gauss valuation: terms (i, k, q)
// where i is the series exponent, k the p-valuation of the coefficient and
// q its residue-direction valuation.
class BivariatePoly {
 public:
  struct Term {
    long i;
    mpq_class k, q;
  };

  explicit BivariatePoly(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (size_t a = 0; a < terms_.size(); ++a)
      for (size_t b = a + 1; b < terms_.size(); ++b)
        if (terms_[a].i == terms_[b].i && terms_[a].k == terms_[b].k && terms_[a].q == terms_[b].q)
          fail("BivariatePoly", "duplicate term");
    if (terms_.empty()) fail("BivariatePoly", "no terms");
  }

  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

// min over terms of k + q*r + i*s*r.
inline LogValue gauss_val2(const BivariatePoly& B, const LogValue& r, const LogValue& s) {
  const LogValue sr = s * r;
  LogValue best;
  bool first = true;
  for (const auto& t : B.terms()) {
    const LogValue cand = LogValue(t.k) + t.q * r + mpq_class(t.i) * sr;
    if (first || cand < best) { best = cand; first = false; }
  }
  return best;
}

struct NewtonPoint {
  long x;
  LogValue y;
};

struct PolygonEdge {
  LogValue slope;
  long mult;  // horizontal width
};

struct NewtonPolygon {
  std::vector<NewtonPoint> vertices;  // lower hull, left to right
  std::vector<PolygonEdge> edges;     // ascending slopes
};

// Lower convex hull of points with distinct integer x, slopes ascending.
inline NewtonPolygon newton_polygon(std::vector<NewtonPoint> pts) {
  if (pts.empty()) fail("newton_polygon", "no points");
  std::sort(pts.begin(), pts.end(), [](const NewtonPoint& a, const NewtonPoint& b) { return a.x < b.x; });
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i].x == pts[i + 1].x) fail("newton_polygon", "duplicate abscissa " + std::to_string(pts[i].x));

  NewtonPolygon out;
  for (const auto& p : pts) {
    // pop while the previous vertex lies on or above the new chord
    while (out.vertices.size() >= 2) {
      const NewtonPoint& a = out.vertices[out.vertices.size() - 2];
      const NewtonPoint& b = out.vertices.back();
      // keep b iff slope(a,b) < slope(b,p):  (b.y-a.y)(p.x-b.x) < (p.y-b.y)(b.x-a.x)
      const LogValue lhs = (b.y - a.y) * mpq_class(p.x - b.x);
      const LogValue rhs = (p.y - b.y) * mpq_class(b.x - a.x);
      if (lhs < rhs) break;
      out.vertices.pop_back();
    }
    out.vertices.push_back(p);
  }
  for (size_t i = 0; i + 1 < out.vertices.size(); ++i) {
    const NewtonPoint& a = out.vertices[i];
    const NewtonPoint& b = out.vertices[i + 1];
    out.edges.push_back({(b.y - a.y) / mpq_class(b.x - a.x), b.x - a.x});
  }
  return out;
}

// Hull slope as an affine function of the radius parameter r on one cell:
// slope(r) = c0 + c1*r.
struct AffineEdge {
  LogValue c0, c1;
  long mult;
  LogValue at(const LogValue& r) const { return c0 + c1 * r; }
};

struct HullCell {
  Interval where;
  std::vector<AffineEdge> edges;  // ascending throughout the cell
};

struct ParamHull {
  Interval window;
  std::vector<HullCell> cells;  // consecutive, sharing endpoints

  const HullCell& cell_at(const LogValue& r) const {
    for (const auto& c : cells)
      if (c.where.contains(r)) return c;
    fail("ParamHull::cell_at", "argument " + r.str() + " outside window");
  }
};

// Newton polygon of the family  { (i, gauss_val(P_i, r)) : i }  as a
// function of r on a window.  The window is subdivided at every parameter
// where some height's active term changes and at every parameter where
// three heights become collinear; between those events the hull
// combinatorics are constant and each edge slope is affine in r.
inline ParamHull parametric_hull(const std::vector<std::pair<long, ValuedPoly>>& polys,
                                 const Interval& window) {
  if (window.is_point()) fail("parametric_hull", "window must be nondegenerate");
  std::vector<std::pair<long, ValuedPoly>> entries;
  for (const auto& [i, P] : polys)
    if (!P.is_zero()) entries.push_back({i, P});
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i + 1 < entries.size(); ++i)
    if (entries[i].first == entries[i + 1].first)
      fail("parametric_hull", "duplicate height index " + std::to_string(entries[i].first));
  if (entries.size() < 2) fail("parametric_hull", "need at least two nonzero heights");

  const auto in_window = [&window](const LogValue& r) { return window.lo < r && r < window.hi; };

  // 1. active-term changes: pairwise crossings of term lines within a poly
  std::vector<LogValue> cuts{window.lo, window.hi};
  for (const auto& [idx, P] : entries) {
    const auto& ts = P.terms();
    for (size_t a = 0; a < ts.size(); ++a)
      for (size_t b = a + 1; b < ts.size(); ++b) {
        // v_a + e_a r = v_b + e_b r  (exponents are distinct)
        const LogValue r = (ts[a].val - ts[b].val) / mpq_class(ts[b].exp - ts[a].exp);
        if (in_window(r)) cuts.push_back(r);
      }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // per-cell affine heights: V(r) = a + b*r, b integral
  struct AffineHeight {
    long x;
    LogValue a;
    long b;
  };
  const auto heights_on = [&entries](const LogValue& sample) {
    std::vector<AffineHeight> hs;
    hs.reserve(entries.size());
    for (const auto& [idx, P] : entries) {
      const ValuedPoly::Term* best = &P.terms().front();
      LogValue best_v = best->val + LogValue(best->exp) * sample;
      for (const auto& t : P.terms()) {
        const LogValue v = t.val + LogValue(t.exp) * sample;
        if (v < best_v) { best_v = v; best = &t; }
      }
      hs.push_back({idx, best->val, best->exp});
    }
    return hs;
  };

  // 2. collinearity events inside each preliminary cell
  std::vector<LogValue> all_cuts = cuts;
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    const LogValue mid = (cuts[c] + cuts[c + 1]) / 2;
    const auto hs = heights_on(mid);
    for (size_t i = 0; i < hs.size(); ++i)
      for (size_t j = i + 1; j < hs.size(); ++j)
        for (size_t k = j + 1; k < hs.size(); ++k) {
          // (V_j - V_i)(x_k - x_j) - (V_k - V_j)(x_j - x_i) = A + B r
          const mpq_class w1(hs[k].x - hs[j].x), w2(hs[j].x - hs[i].x);
          const LogValue A = (hs[j].a - hs[i].a) * w1 - (hs[k].a - hs[j].a) * w2;
          const mpq_class B = mpq_class(hs[j].b - hs[i].b) * w1 - mpq_class(hs[k].b - hs[j].b) * w2;
          if (B == 0) continue;
          const LogValue r = -A / mpq_class(B);
          if (cuts[c] < r && r < cuts[c + 1]) all_cuts.push_back(r);
        }
  }
  std::sort(all_cuts.begin(), all_cuts.end());
  all_cuts.erase(std::unique(all_cuts.begin(), all_cuts.end()), all_cuts.end());

  // 3. per final cell: hull at the midpoint fixes the combinatorics
  ParamHull out{window, {}};
  for (size_t c = 0; c + 1 < all_cuts.size(); ++c) {
    const LogValue mid = (all_cuts[c] + all_cuts[c + 1]) / 2;
    const auto hs = heights_on(mid);
    std::vector<NewtonPoint> pts;
    pts.reserve(hs.size());
    for (const auto& h : hs) pts.push_back({h.x, h.a + LogValue(h.b) * mid});
    const NewtonPolygon hull = newton_polygon(std::move(pts));

    HullCell cell;
    const bool first = c == 0, last = c + 2 == all_cuts.size();
    cell.where = Interval::make(all_cuts[c], all_cuts[c + 1],
                                first && window.lo_open, last && window.hi_open);
    for (size_t v = 0; v + 1 < hull.vertices.size(); ++v) {
      const long xa = hull.vertices[v].x, xb = hull.vertices[v + 1].x;
      const AffineHeight* ha = nullptr;
      const AffineHeight* hb = nullptr;
      for (const auto& h : hs) {
        if (h.x == xa) ha = &h;
        if (h.x == xb) hb = &h;
      }
      const mpq_class w(xb - xa);
      cell.edges.push_back({(hb->a - ha->a) / w, LogValue(mpq_class(hb->b - ha->b) / w), xb - xa});
    }
    out.cells.push_back(std::move(cell));
  }
  return out;
}

// Laurent polynomial with exact rational coefficients; the bridge from
// genuine coefficient arithmetic to valuation skeletons.
class RationalLaurent {
 public:
  RationalLaurent() = default;
  explicit RationalLaurent(std::map<long, mpq_class> coeffs) {
    for (auto& [e, c] : coeffs)
      if (c != 0) coeffs_.emplace(e, c);
  }

  const std::map<long, mpq_class>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  // r(x) -> scalar * x^shift * r(x^m)
  RationalLaurent substituted(long m, long shift, const mpq_class& scalar) const {
    std::map<long, mpq_class> out;
    for (const auto& [e, c] : coeffs_) out[m * e + shift] = scalar * c;
    return RationalLaurent(std::move(out));
  }

  // r(x) -> r(x + z); requires nonnegative exponents.
  RationalLaurent translated(const mpq_class& z) const {
    std::map<long, mpq_class> out;
    for (const auto& [e, c] : coeffs_) {
      if (e < 0) fail("RationalLaurent::translated", "negative exponent " + std::to_string(e));
      mpz_class binom;
      for (long i = 0; i <= e; ++i) {
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(i));
        out[i] += c * mpq_class(binom) * rat_pow(z, static_cast<unsigned long>(e - i));
      }
    }
    return RationalLaurent(std::move(out));
  }

  ValuedPoly to_valued(unsigned long p) const {
    std::vector<ValuedPoly::Term> ts;
    for (const auto& [e, c] : coeffs_) ts.push_back({e, LogValue(mpq_class(rat_pval(c, p)))});
    return ValuedPoly(std::move(ts));
  }

 private:
  std::map<long, mpq_class> coeffs_;
};

}  // namespace padic
