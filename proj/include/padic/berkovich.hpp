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
//
// A computable model of the Berkovich closed unit disc over the
// Hahn-monomial field.  Points are closed discs D(z, s) in valuation
// coordinates (s is the negative log of the radius, so bigger s means a
// smaller disc; s = infinity is a classical point), plus finite prefixes
// of strictly shrinking disc chains standing in for limit points the
// model cannot complete.  Comparisons against a prefix that would need
// the unseen tail report Undecidable instead of guessing.

#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "padic/hahn.hpp"
#include "padic/log_value.hpp"

namespace padic {

struct Disc {
  HahnElement center;
  ExtLogValue s;

  Disc(HahnElement z, ExtLogValue radius) : center(std::move(z)), s(std::move(radius)) {
    if (center.valuation() < ExtLogValue(LogValue(0)))
      fail("Disc", "center lies outside the unit disc");
    if (s < ExtLogValue(LogValue(0))) fail("Disc", "negative log-radius");
  }
};

inline Disc gauss_disc(const FqField& F) {
  return Disc(HahnElement::zero(F), ExtLogValue(LogValue(0)));
}

inline bool disc_dominates(const Disc& a, const Disc& b) {
  return a.s <= b.s && (a.center - b.center).valuation() >= a.s;
}

inline bool disc_disjoint(const Disc& a, const Disc& b) {
  return (a.center - b.center).valuation() < min(a.s, b.s);
}

inline bool same_disc(const Disc& a, const Disc& b) {
  return disc_dominates(a, b) && disc_dominates(b, a);
}

// Either a single disc or a strictly shrinking finite chain of discs: the
// data a proof about a nested-sequence point actually gets to inspect.
class BerkovichPoint {
 public:
  BerkovichPoint(Disc d) : rep_(std::move(d)) {}  // NOLINT

  static BerkovichPoint seq_prefix(std::vector<Disc> chain) {
    if (chain.empty()) fail("BerkovichPoint", "empty prefix chain");
    for (size_t i = 0; i < chain.size(); ++i) {
      if (chain[i].s.is_infinite())
        fail("BerkovichPoint", "a shrinking chain cannot pass through a classical point");
      if (i + 1 < chain.size()) {
        if (!(chain[i].s < chain[i + 1].s) || !disc_dominates(chain[i], chain[i + 1]))
          fail("BerkovichPoint", "prefix discs must shrink strictly");
      }
    }
    return BerkovichPoint(std::move(chain));
  }

  bool is_prefix() const { return std::holds_alternative<std::vector<Disc>>(rep_); }
  const Disc& disc() const {
    if (is_prefix()) fail("BerkovichPoint::disc", "point is a prefix chain");
    return std::get<Disc>(rep_);
  }
  const std::vector<Disc>& chain() const {
    if (!is_prefix()) fail("BerkovichPoint::chain", "point is a single disc");
    return std::get<std::vector<Disc>>(rep_);
  }
  // Smallest disc this point is known to lie below.
  const Disc& last() const { return is_prefix() ? chain().back() : disc(); }

 private:
  explicit BerkovichPoint(std::vector<Disc> chain) : rep_(std::move(chain)) {}
  std::variant<Disc, std::vector<Disc>> rep_;
};

enum class Decision { Yes, No, Undecidable };

inline bool chains_equal(const std::vector<Disc>& a, const std::vector<Disc>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!same_disc(a[i], b[i]) || a[i].s != b[i].s) return false;
  return true;
}

// Domination (alpha above beta in the tree).  Prefix chains pin their
// point only below the last disc; anything finer depends on the tail.
inline Decision tri_dominates(const BerkovichPoint& alpha, const BerkovichPoint& beta) {
  if (alpha.is_prefix()) {
    if (beta.is_prefix() && chains_equal(alpha.chain(), beta.chain())) return Decision::Yes;
    Decision head = tri_dominates(BerkovichPoint(alpha.last()), beta);
    return head == Decision::No ? Decision::No : Decision::Undecidable;
  }
  if (beta.is_prefix()) {
    if (disc_dominates(alpha.disc(), beta.last())) return Decision::Yes;
    if (disc_disjoint(alpha.disc(), beta.last())) return Decision::No;
    return Decision::Undecidable;
  }
  return disc_dominates(alpha.disc(), beta.disc()) ? Decision::Yes : Decision::No;
}

inline bool dominates(const BerkovichPoint& alpha, const BerkovichPoint& beta) {
  switch (tri_dominates(alpha, beta)) {
    case Decision::Yes: return true;
    case Decision::No: return false;
    default: fail("dominates", "undecidable-from-prefix");
  }
}

inline bool same_point(const BerkovichPoint& alpha, const BerkovichPoint& beta) {
  return dominates(alpha, beta) && dominates(beta, alpha);
}

enum class PointType { TypeI, TypeII, TypeIII, TypeIVPrefix };

// Classification relative to value group Q of the model.
inline PointType classify(const BerkovichPoint& alpha) {
  if (alpha.is_prefix()) return PointType::TypeIVPrefix;
  const ExtLogValue& s = alpha.disc().s;
  if (s.is_infinite()) return PointType::TypeI;
  return s.finite().irr() == 0 ? PointType::TypeII : PointType::TypeIII;
}

// The unique point of log-radius s dominating alpha.
inline BerkovichPoint path_point(const BerkovichPoint& alpha, const ExtLogValue& s) {
  if (s < ExtLogValue(LogValue(0))) fail("path_point", "negative log-radius");
  const Disc& known = alpha.last();
  if (known.s < s) {
    fail("path_point", alpha.is_prefix()
                           ? "undecidable-from-prefix: radius below the known chain"
                           : "requested point lies below alpha");
  }
  return BerkovichPoint(Disc(known.center, s));
}

inline BerkovichPoint meet(const BerkovichPoint& alpha, const BerkovichPoint& beta) {
  if (alpha.is_prefix() || beta.is_prefix()) fail("meet", "disc inputs required");
  const Disc& a = alpha.disc();
  const Disc& b = beta.disc();
  return BerkovichPoint(Disc(a.center, min(min(a.s, b.s), (a.center - b.center).valuation())));
}

// Valuation-form comparison of a factored polynomial against a disc that
// excludes all its roots: the value at an outside point versus the sup
// over the disc.  All quantities are valuations, so the norm inequality
// appears with its direction reversed.
struct DisjointDiscReport {
  bool hypothesis_ok;    // every root z has val(z - z2) < s1
  ExtLogValue at_point;  // val P(z2)
  ExtLogValue on_disc;   // valuation form of sup |P| over D(z1, s1)
  bool separated;        // at_point < on_disc strictly
  bool ok() const { return hypothesis_ok && separated; }
};

inline DisjointDiscReport check_disjoint_discs(const std::vector<HahnElement>& roots,
                                               const LogValue& lead_val, size_t z1_index,
                                               const LogValue& s1, const HahnElement& z2) {
  if (z1_index >= roots.size()) fail("check_disjoint_discs", "root index out of range");
  const HahnElement& z1 = roots[z1_index];
  DisjointDiscReport rep{true, ExtLogValue(lead_val), ExtLogValue(lead_val), false};
  const ExtLogValue ext_s1{s1};
  for (const HahnElement& z : roots) {
    const ExtLogValue away = (z - z2).valuation();
    if (!(away < ext_s1)) rep.hypothesis_ok = false;
    rep.at_point = rep.at_point + away;
    rep.on_disc = rep.on_disc + min(ext_s1, (z1 - z).valuation());
  }
  rep.separated = rep.at_point < rep.on_disc;
  return rep;
}

// One sublevel-set constraint, in valuation form: the locus of classical
// points x with lead_val + sum_z val(x - z) >= bound.
struct PolyConstraint {
  std::vector<HahnElement> roots;
  LogValue lead_val;
  LogValue bound;
};

inline ExtLogValue constraint_value(const PolyConstraint& c, const HahnElement& x) {
  ExtLogValue v{c.lead_val};
  for (const HahnElement& z : c.roots) v = v + (x - z).valuation();
  return v;
}

inline bool constraint_holds(const PolyConstraint& c, const HahnElement& x) {
  return constraint_value(c, x) >= ExtLogValue(c.bound);
}

struct DiscSet {
  std::vector<Disc> discs;
  bool pairwise_disjoint = true;
};

inline bool disc_contains(const Disc& d, const HahnElement& x) {
  return (x - d.center).valuation() >= d.s;
}

inline bool disc_set_contains(const DiscSet& set, const HahnElement& x) {
  for (const Disc& d : set.discs)
    if (disc_contains(d, x)) return true;
  return false;
}

namespace detail {

// Locus of c + sum val(x - z_i) >= bound among the given roots, all of
// which lie in the current ambient disc.  Splits on whether one closed
// disc already captures the locus; otherwise groups the roots into
// clusters separated at the minimal pairwise distance and recurses, with
// the out-of-cluster factors contributing constants.
inline void union_rec(const std::vector<HahnElement>& roots, const LogValue& c,
                      const LogValue& bound, std::vector<Disc>& out) {
  const long l = static_cast<long>(roots.size());
  ExtLogValue m = ExtLogValue::infinity();
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      m = min(m, (roots[i] - roots[j]).valuation());

  const LogValue need = bound - c;
  if (m.is_infinite() || !(m.finite() * l < need)) {
    LogValue radius = need / l;
    if (radius < LogValue(0)) radius = LogValue(0);
    out.emplace_back(roots.front(), ExtLogValue(radius));
    return;
  }

  std::vector<std::vector<size_t>> clusters;
  for (size_t i = 0; i < roots.size(); ++i) {
    bool placed = false;
    for (auto& cl : clusters)
      if (m < (roots[cl.front()] - roots[i]).valuation()) {
        cl.push_back(i);
        placed = true;
        break;
      }
    if (!placed) clusters.push_back({i});
  }

  for (const auto& cl : clusters) {
    std::vector<HahnElement> inner;
    LogValue shifted = c;
    for (size_t i = 0; i < roots.size(); ++i) {
      const bool inside =
          m < (roots[cl.front()] - roots[i]).valuation() || cl.front() == i;
      if (inside)
        inner.push_back(roots[i]);
      else
        shifted = shifted + (roots[cl.front()] - roots[i]).valuation().finite();
    }
    union_rec(inner, shifted, bound, out);
  }
}

inline DiscSet union_single(const FqField& F, const PolyConstraint& cons) {
  LogValue c = cons.lead_val;
  std::vector<HahnElement> inside;
  for (const HahnElement& z : cons.roots) {
    const ExtLogValue v = z.valuation();
    if (v < ExtLogValue(LogValue(0)))
      c = c + v.finite();  // constant factor for every x in the unit disc
    else
      inside.push_back(z);
  }
  DiscSet set;
  if (inside.empty()) {
    if (!(c < cons.bound)) set.discs.push_back(gauss_disc(F));
    return set;
  }
  union_rec(inside, c, cons.bound, set.discs);
  return set;
}

inline DiscSet intersect(const DiscSet& A, const DiscSet& B) {
  DiscSet out;
  for (const Disc& a : A.discs)
    for (const Disc& b : B.discs) {
      if (disc_dominates(a, b))
        out.discs.push_back(b);
      else if (disc_dominates(b, a))
        out.discs.push_back(a);
    }
  return out;
}

}  // namespace detail

// Decomposes the joint sublevel locus of finitely many factored
// polynomials into pairwise disjoint closed discs.  Two discs meet only
// when nested, so intersecting per-constraint answers stays a disc list.
inline DiscSet union_discs(const FqField& F, const std::vector<PolyConstraint>& constraints) {
  DiscSet acc;
  acc.discs.push_back(gauss_disc(F));
  for (const PolyConstraint& cons : constraints) {
    for (const HahnElement& z : cons.roots)
      if (!(z.field() == F)) fail("union_discs", "root field mismatch");
    acc = detail::intersect(acc, detail::union_single(F, cons));
    if (acc.discs.empty()) break;
  }
  return acc;
}

}  // namespace padic
