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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "padic/artin_schreier.hpp"

using namespace padic;

namespace {

std::mt19937_64 rng(52711);

HahnElement random_hahn(const FqField& F, int max_terms = 3, long span = 4) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<long> num(-span, span), den(1, 4);
  std::uniform_int_distribution<long> coeff(0, static_cast<long>(F.q()) - 1);
  std::vector<HahnElement::Term> ts;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    ts.push_back({make_rat(num(rng), den(rng)), static_cast<FqField::Elem>(coeff(rng))});
  return HahnElement(F, std::move(ts));
}

ASParameter random_param(const FqField& F, long min_exp, long max_exp,
                         int max_terms = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<long> expo(min_exp, max_exp);
  std::vector<std::pair<long, HahnElement>> cs;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) cs.emplace_back(expo(rng), random_hahn(F));
  return ASParameter(F, std::move(cs));
}

}  // namespace

TEST_CASE("preparation folds prime-power exponents") {
  const FqField F3(3);
  const HahnElement one = HahnElement::monomial(F3, 1, 0);

  // x^3 + x^9 folds twice onto x: coefficient 1 + 1 = 2.
  ASParameter u(F3, {{3, one}, {9, one}});
  PreparedParameter pp = as_prepare(u);
  CHECK(pp.dropped.is_zero());
  CHECK(pp.reduced == ASParameter(F3, {{1, HahnElement::monomial(F3, 2, 0)}}));
  CHECK(as_is_prepared(pp.reduced));
  CHECK_FALSE(as_is_prepared(u));

  // c^5 x^5 - c x is a coboundary over F_5: it prepares to zero.
  const FqField F5(5);
  ASParameter v(F5, {{5, HahnElement::monomial(F5, 2, 0)},
                     {1, -HahnElement::monomial(F5, 2, 0)}});
  CHECK(as_prepare(v).reduced.is_zero());

  // Constants are dropped and reported verbatim.
  const HahnElement c = HahnElement::monomial(F3, 2, make_rat(-1, 2));
  ASParameter w(F3, {{0, c}, {1, one}});
  PreparedParameter wp = as_prepare(w);
  CHECK(wp.dropped == c);
  CHECK(wp.reduced == ASParameter(F3, {{1, one}}));

  // Negative exponents fold the same way: x^{-3} onto x^{-1}.
  const HahnElement t = HahnElement::monomial(F3, 1, 1);
  ASParameter neg(F3, {{-3, t}});
  CHECK(as_prepare(neg).reduced ==
        ASParameter(F3, {{-1, HahnElement::monomial(F3, 1, make_rat(1, 3))}}));

  // Nontrivial coefficient field: the fold takes p-th roots.
  const FqField F9(3, 2);
  HahnElement g = HahnElement::monomial(F9, F9.from_int(0) + 3, 0);  // generator
  ASParameter gu(F9, {{3, g.frobenius()}});
  CHECK(as_prepare(gu).reduced == ASParameter(F9, {{1, g}}));
}

TEST_CASE("coboundaries prepare to zero and never change a class") {
  const FqField fields[] = {FqField(2), FqField(3), FqField(5), FqField(3, 2)};
  std::uniform_int_distribution<int> pick(0, 3);
  for (int iter = 0; iter < 120; ++iter) {
    const FqField& F = fields[pick(rng)];
    ASParameter v = random_param(F, -6, 6);
    CHECK(as_prepare(as_coboundary(v)).reduced.is_zero());

    ASParameter u = random_param(F, -6, 6);
    ASParameter shifted = as_combine(u, as_coboundary(v));
    CHECK(as_prepare(shifted).reduced == as_prepare(u).reduced);
  }
}

TEST_CASE("preparation is idempotent and additive") {
  const FqField fields[] = {FqField(2), FqField(3), FqField(5), FqField(3, 2)};
  std::uniform_int_distribution<int> pick(0, 3);
  for (int iter = 0; iter < 80; ++iter) {
    const FqField& F = fields[pick(rng)];
    ASParameter u = random_param(F, -6, 6);
    ASParameter w = random_param(F, -6, 6);
    ASParameter ru = as_prepare(u).reduced;
    PreparedParameter again = as_prepare(ru);
    CHECK(again.reduced == ru);
    CHECK(again.dropped.is_zero());
    CHECK(as_prepare(as_combine(u, w)).reduced ==
          as_prepare(as_combine(ru, as_prepare(w).reduced)).reduced);
  }
}

TEST_CASE("radius profile of a prepared parameter") {
  const FqField F2(2);
  const Interval dom = Interval::closed(LogValue(0), LogValue(2));

  // u = t^{-1} x: max(s, 1).
  ASParameter u(F2, {{1, HahnElement::monomial(F2, 1, -1)}});
  PLFun f = b1_profile(u, dom);
  CHECK(f.eval(LogValue(0)) == LogValue(1));
  CHECK(f.eval(LogValue(1)) == LogValue(1));
  CHECK(f.eval(LogValue(2)) == LogValue(2));
  CHECK(f.piece_count() == 2);

  // The zero parameter is split: profile is the identity.
  CHECK(b1_profile(ASParameter(F2), dom) == PLFun::identity(dom));

  // Unprepared input is rejected.
  CHECK_THROWS(b1_profile(ASParameter(F2, {{2, HahnElement::monomial(F2, 1, 0)}}), dom));

  // Negative prepared exponent: slope 1 - i exceeds one.
  ASParameter neg(F2, {{-1, HahnElement::monomial(F2, 1, 3)}});
  PLFun g = b1_profile(neg, dom);
  CHECK(g.eval(LogValue(0)) == LogValue(0));
  CHECK(g.eval(LogValue(2)) == LogValue(2));
  // branch -3 + 2s crosses s at s = 3.
  CHECK(b1_profile(neg, Interval::closed(LogValue(0), LogValue(5))).eval(LogValue(4)) ==
        LogValue(5));
}

TEST_CASE("triviality test agrees with the profile where decisive") {
  const FqField F3(3);
  const Interval dom = Interval::closed(LogValue(0), LogValue(4));

  ASParameter tame(F3, {{1, HahnElement::monomial(F3, 1, 2)}});
  CHECK(as_is_trivial(tame, dom));
  CHECK(b1_profile(tame, dom) == PLFun::identity(dom));

  ASParameter wild(F3, {{1, HahnElement::monomial(F3, 1, -1)}});
  CHECK_FALSE(as_is_trivial(wild, dom));
  CHECK_FALSE(b1_profile(wild, dom) == PLFun::identity(dom));

  const FqField fields[] = {FqField(2), FqField(3), FqField(5)};
  std::uniform_int_distribution<int> pick(0, 2);
  for (int iter = 0; iter < 100; ++iter) {
    const FqField& F = fields[pick(rng)];
    ASParameter u = as_prepare(random_param(F, -5, 5)).reduced;
    const bool trivial = as_is_trivial(u, dom);
    PLFun prof = b1_profile(u, dom);
    if (trivial) CHECK(prof == PLFun::identity(dom));
    // Strict violation at an endpoint forces a nontrivial profile.
    bool violated = false;
    for (const auto& [i, c] : u.coeffs()) {
      const LogValue v = c.valuation().finite();
      if (v + LogValue(i) * dom.lo < LogValue(0)) violated = true;
      if (v + LogValue(i) * dom.hi < LogValue(0)) violated = true;
    }
    if (violated) CHECK_FALSE(prof == PLFun::identity(dom));
  }
}

TEST_CASE("translation, combination, tame pullback") {
  const FqField F3(3);
  const HahnElement one = HahnElement::monomial(F3, 1, 0);
  const HahnElement t = HahnElement::monomial(F3, 1, 1);

  // (x + t)^2 = x^2 + 2 t x + t^2.
  ASParameter u(F3, {{2, one}});
  ASParameter tr = as_translate(u, t);
  CHECK(tr == ASParameter(F3, {{2, one},
                               {1, HahnElement::monomial(F3, 2, 1)},
                               {0, HahnElement::monomial(F3, 1, 2)}}));

  // Translating by zero is the identity; negative exponents are rejected.
  CHECK(as_translate(u, HahnElement::zero(F3)) == u);
  CHECK_THROWS(as_translate(ASParameter(F3, {{-1, one}}), t));

  // Pullback along x^2 doubles exponents; degree divisible by p is refused.
  CHECK(as_pullback_tame(u, 2) == ASParameter(F3, {{4, one}}));
  CHECK_THROWS(as_pullback_tame(u, 3));

  // Translation respects addition.
  for (int iter = 0; iter < 40; ++iter) {
    ASParameter a = random_param(F3, 0, 5);
    ASParameter b = random_param(F3, 0, 5);
    HahnElement z = random_hahn(F3);
    CHECK(as_translate(as_combine(a, b), z) ==
          as_combine(as_translate(a, z), as_translate(b, z)));
  }
}

TEST_CASE("profile along a path through the tree") {
  const FqField F3(3);
  // u = t^{-2} x^2 toward the center z = t: max(s, 2 - s), no plateau.
  ASParameter u(F3, {{2, HahnElement::monomial(F3, 1, -2)}});
  const HahnElement z = HahnElement::monomial(F3, 1, 1);
  PathProfile path = b1_along_path(u, z, LogValue(2));
  CHECK(path.profile.eval(LogValue(0)) == LogValue(2));
  CHECK(path.profile.eval(LogValue(1)) == LogValue(1));
  CHECK(path.profile.eval(LogValue(2)) == LogValue(2));
  CHECK(path.profile.piece_count() == 2);
  CHECK(path.terminal_slope == LogValue(1));
  CHECK(pl_is_convex(path.profile));

  // Walking toward a different center keeps the branch wild: the same u
  // along z = 0 gives max(s, 2 - s) as well on [0,2], but along a unit
  // center the x-coefficient picks up valuation 0 instead.
  PathProfile origin = b1_along_path(u, HahnElement::zero(F3), LogValue(2));
  CHECK(origin.profile == path.profile);

  const HahnElement unit = HahnElement::monomial(F3, 1, 0);
  PathProfile other = b1_along_path(u, unit, LogValue(2));
  // translate: t^{-2}(x + 1)^2 has x-coefficient 2 t^{-2}: branch 2 + 0 s.
  CHECK(other.profile.eval(LogValue(0)) == LogValue(2));
  CHECK(other.profile.eval(LogValue(2)) == LogValue(2));
  CHECK(other.profile.eval(LogValue(1)) == LogValue(2));

  // Random parameters over random centers: the glued profile is continuous
  // by construction, convex, and eventually has slope one.
  const FqField fields[] = {FqField(2), FqField(3), FqField(5)};
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<long> num(0, 12), den(1, 3);
  for (int iter = 0; iter < 60; ++iter) {
    const FqField& F = fields[pick(rng)];
    ASParameter a = random_param(F, 0, 6);
    std::uniform_int_distribution<long> coeff(0, static_cast<long>(F.q()) - 1);
    std::vector<HahnElement::Term> zts;
    for (int k = std::uniform_int_distribution<int>(0, 3)(rng); k > 0; --k)
      zts.push_back({make_rat(num(rng), den(rng)), static_cast<FqField::Elem>(coeff(rng))});
    const HahnElement center(F, std::move(zts));
    PathProfile pp = b1_along_path(a, center, LogValue(40));
    CHECK(pl_is_convex(pp.profile));
    CHECK(pp.terminal_slope == LogValue(1));
    CHECK(pp.profile.domain() == Interval::closed(LogValue(0), LogValue(40)));
  }
}
