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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "padic/error.hpp"
#include "padic/hahn.hpp"
#include "padic/plfun.hpp"

namespace padic {

// Right-hand side of an Artin-Schreier equation y^p - y = u(x), with u a
// Laurent polynomial in x over the Hahn coefficient field.  Zero
// coefficients are dropped on construction.
class ASParameter {
 public:
  explicit ASParameter(FqField field) : field_(std::move(field)) {}
  ASParameter(FqField field, std::vector<std::pair<long, HahnElement>> coeffs)
      : field_(std::move(field)) {
    for (auto& [e, c] : coeffs) {
      if (!(c.field() == field_))
        fail("ASParameter", "coefficient from a different field");
      if (c.is_zero()) continue;
      auto it = coeffs_.find(e);
      if (it == coeffs_.end()) {
        coeffs_.emplace(e, std::move(c));
      } else {
        HahnElement s = it->second + c;
        if (s.is_zero())
          coeffs_.erase(it);
        else
          it->second = std::move(s);
      }
    }
  }

  const FqField& field() const { return field_; }
  const std::map<long, HahnElement>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  friend bool operator==(const ASParameter& x, const ASParameter& y) {
    return x.field_ == y.field_ && x.coeffs_ == y.coeffs_;
  }

 private:
  FqField field_;
  std::map<long, HahnElement> coeffs_;
};

inline ASParameter as_combine(const ASParameter& u, const ASParameter& v) {
  if (!(u.field() == v.field())) fail("as_combine", "fields differ");
  std::vector<std::pair<long, HahnElement>> all(u.coeffs().begin(), u.coeffs().end());
  all.insert(all.end(), v.coeffs().begin(), v.coeffs().end());
  return ASParameter(u.field(), std::move(all));
}

// The coboundary of v: frobenius(v) - v, an Artin-Schreier-trivial
// parameter.
inline ASParameter as_coboundary(const ASParameter& v) {
  const long p = static_cast<long>(v.field().p());
  std::vector<std::pair<long, HahnElement>> out;
  for (const auto& [e, c] : v.coeffs()) {
    out.emplace_back(p * e, c.frobenius());
    out.emplace_back(e, -c);
  }
  return ASParameter(v.field(), std::move(out));
}

// Substitute x -> x + z; exponents must be nonnegative.
inline ASParameter as_translate(const ASParameter& u, const HahnElement& z) {
  if (!(z.field() == u.field())) fail("as_translate", "fields differ");
  std::vector<std::pair<long, HahnElement>> out;
  for (const auto& [e, c] : u.coeffs()) {
    if (e < 0)
      fail("as_translate", "negative exponent " + std::to_string(e));
    for (long i = 0; i <= e; ++i) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(e),
                   static_cast<unsigned long>(i));
      const unsigned long rem = mpz_fdiv_ui(binom.get_mpz_t(), u.field().p());
      if (rem == 0) continue;
      HahnElement scalar = HahnElement::monomial(
          u.field(), u.field().from_int(static_cast<long>(rem)), 0);
      out.emplace_back(i, scalar * c * z.pow(static_cast<unsigned long>(e - i)));
    }
  }
  return ASParameter(u.field(), std::move(out));
}

// Pull back along x -> x^m, m prime to p: exponents scale by m.
inline ASParameter as_pullback_tame(const ASParameter& u, unsigned long m) {
  if (m == 0 || m % u.field().p() == 0)
    fail("as_pullback_tame", "degree must be nonzero and prime to p");
  std::vector<std::pair<long, HahnElement>> out;
  for (const auto& [e, c] : u.coeffs())
    out.emplace_back(static_cast<long>(m) * e, c);
  return ASParameter(u.field(), std::move(out));
}

struct PreparedParameter {
  ASParameter reduced;
  HahnElement dropped;  // the constant term removed during preparation
};

inline bool as_is_prepared(const ASParameter& u) {
  const long p = static_cast<long>(u.field().p());
  for (const auto& [e, c] : u.coeffs())
    if (e == 0 || e % p == 0) return false;
  return true;
}

// Reduce a parameter modulo coboundaries until every exponent is nonzero and
// prime to p: a term at exponent j p^k folds into the p^k-th root of its
// coefficient at exponent j, and the constant term is dropped outright.
inline PreparedParameter as_prepare(const ASParameter& u) {
  const long p = static_cast<long>(u.field().p());
  HahnElement dropped = HahnElement::zero(u.field());
  std::vector<std::pair<long, HahnElement>> out;
  for (const auto& [e, c] : u.coeffs()) {
    if (e == 0) {
      dropped = dropped + c;
      continue;
    }
    long j = e;
    HahnElement v = c;
    while (j % p == 0) {
      j /= p;
      v = v.pth_root();
    }
    out.emplace_back(j, std::move(v));
  }
  return PreparedParameter{ASParameter(u.field(), std::move(out)), std::move(dropped)};
}

// Radius profile of the covering y^p - y = u on a window of s = -log|x|,
// for a prepared parameter: max(s, max_i(-val(u_i) + (1 - i) s)).
inline PLFun b1_profile(const ASParameter& u, const Interval& dom) {
  if (!as_is_prepared(u))
    fail("b1_profile", "parameter must be prepared first");
  PLFun acc = PLFun::identity(dom);
  for (const auto& [i, c] : u.coeffs())
    acc = pl_combine(acc,
                     PLFun::affine(dom, LogValue(0) - c.valuation().finite(),
                                   LogValue(1 - i)),
                     PLOp::Max);
  return acc;
}

// The covering is split over the annulus when every branch stays strictly
// below the trivial bound: val(u_i) + i s > 0 at both window endpoints.
inline bool as_is_trivial(const ASParameter& u, const Interval& dom) {
  if (!as_is_prepared(u))
    fail("as_is_trivial", "parameter must be prepared first");
  for (const auto& [i, c] : u.coeffs()) {
    const LogValue v = c.valuation().finite();
    if (!(LogValue(0) < v + LogValue(i) * dom.lo)) return false;
    if (!(LogValue(0) < v + LogValue(i) * dom.hi)) return false;
  }
  return true;
}

struct PathProfile {
  PLFun profile;
  LogValue terminal_slope;
};

// Radius profile along the path s -> (disc of radius p^-s around z), for
// s in [0, s_end].  The center only matters through its truncations: on
// each cell between consecutive exponents of z the truncation is constant,
// and the pieces glue continuously.
inline PathProfile b1_along_path(const ASParameter& u, const HahnElement& z,
                                 const LogValue& s_end) {
  if (!(z.field() == u.field())) fail("b1_along_path", "fields differ");
  if (!(LogValue(0) < s_end)) fail("b1_along_path", "path must have positive length");
  if (!z.is_zero() && z.valuation().finite().sign() < 0)
    fail("b1_along_path", "center must lie in the unit disc");

  std::vector<LogValue> cuts{LogValue(0), s_end};
  for (const auto& t : z.terms()) {
    const LogValue e{t.exp};
    if (LogValue(0) < e && e < s_end) cuts.push_back(e);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<PLFun> pieces;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Interval cell = Interval::closed(cuts[i], cuts[i + 1]);
    const HahnElement head = z.truncate_below(cell.midpoint());
    pieces.push_back(b1_profile(as_prepare(as_translate(u, head)).reduced, cell));
  }
  PLFun prof = pieces.front();
  for (size_t i = 1; i < pieces.size(); ++i) prof = pl_concat(prof, pieces[i]);
  return PathProfile{prof, prof.terminal_slope()};
}

}  // namespace padic
