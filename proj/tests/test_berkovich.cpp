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

#include "padic/berkovich.hpp"

using namespace padic;

namespace {

std::mt19937_64 rng(61903);

HahnElement random_center(const FqField& F, int max_terms = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<long> num(0, 8), den(1, 3);
  std::uniform_int_distribution<long> coeff(0, static_cast<long>(F.q()) - 1);
  std::vector<HahnElement::Term> ts;
  for (int i = nterms(rng); i > 0; --i)
    ts.push_back({make_rat(num(rng), den(rng)), static_cast<FqField::Elem>(coeff(rng))});
  return HahnElement(F, std::move(ts));
}

LogValue random_radius() {
  std::uniform_int_distribution<long> num(0, 12), den(1, 3), kind(0, 3);
  LogValue s = make_rat(num(rng), den(rng));
  if (kind(rng) == 0) s = s + LogValue::sqrt2(make_rat(num(rng), 4));
  return s;
}

Disc random_disc(const FqField& F) { return Disc(random_center(F), ExtLogValue(random_radius())); }

}  // namespace

TEST_CASE("domination of discs") {
  const FqField F3(3);
  const HahnElement t = HahnElement::monomial(F3, 1, 1);
  const HahnElement c = HahnElement::monomial(F3, 2, 0);

  BerkovichPoint big(Disc(HahnElement::zero(F3), ExtLogValue(LogValue(1))));
  BerkovichPoint in(Disc(t, ExtLogValue(LogValue(2))));
  BerkovichPoint off(Disc(c, ExtLogValue(LogValue(2))));
  CHECK(dominates(big, in));
  CHECK_FALSE(dominates(big, off));
  CHECK(dominates(big, big));

  // Centers are interchangeable within the disc.
  CHECK(same_point(BerkovichPoint(Disc(t, ExtLogValue(LogValue(1)))),
                   BerkovichPoint(Disc(HahnElement::zero(F3), ExtLogValue(LogValue(1))))));

  // A point off-center by less than the radius does not move the disc.
  CHECK_THROWS(Disc(HahnElement::monomial(F3, 1, -1), ExtLogValue(LogValue(0))));
  CHECK_THROWS(Disc(t, ExtLogValue(LogValue(-1))));
}

TEST_CASE("domination is a partial order with the tree property") {
  const FqField fields[] = {FqField(2), FqField(3), FqField(5)};
  std::uniform_int_distribution<int> pick(0, 2);
  for (int iter = 0; iter < 200; ++iter) {
    const FqField& F = fields[pick(rng)];
    Disc gamma = random_disc(F);
    // Points above gamma along its path, plus an unrelated disc.
    LogValue cut1 = random_radius();
    LogValue cut2 = random_radius();
    if (gamma.s.finite() < cut1) cut1 = gamma.s.finite();
    if (gamma.s.finite() < cut2) cut2 = gamma.s.finite();
    BerkovichPoint g(gamma);
    BerkovichPoint a = path_point(g, ExtLogValue(cut1));
    BerkovichPoint b = path_point(g, ExtLogValue(cut2));
    BerkovichPoint other(random_disc(F));

    CHECK(dominates(a, g));
    CHECK(dominates(b, g));
    CHECK((dominates(a, b) || dominates(b, a)));

    // Radius monotonicity.
    if (dominates(other, g)) CHECK(other.disc().s <= gamma.s);

    // Antisymmetry: mutual domination collapses to the same point.
    if (dominates(other, a) && dominates(a, other)) CHECK(same_point(other, a));

    // Transitivity along a dominating pair.
    BerkovichPoint m = meet(other, g);
    CHECK(dominates(m, other));
    CHECK(dominates(m, g));
    if (dominates(a, m) && dominates(m, other)) CHECK(dominates(a, other));
    if (dominates(other, a)) CHECK(dominates(other, g));
  }
}

TEST_CASE("prefix chains answer only what the prefix pins down") {
  const FqField F3(3);
  const HahnElement t = HahnElement::monomial(F3, 1, 1);
  const HahnElement t2 = HahnElement::monomial(F3, 1, 2);
  std::vector<Disc> chain;
  chain.emplace_back(HahnElement::zero(F3), ExtLogValue(LogValue(1)));
  chain.emplace_back(t, ExtLogValue(LogValue(2)));
  chain.emplace_back(t + t2, ExtLogValue(LogValue(3)));
  BerkovichPoint prefix = BerkovichPoint::seq_prefix(chain);

  CHECK(classify(prefix) == PointType::TypeIVPrefix);
  CHECK(tri_dominates(BerkovichPoint(gauss_disc(F3)), prefix) == Decision::Yes);

  // Disjoint from the last known disc: settled no.
  BerkovichPoint far(Disc(HahnElement::monomial(F3, 1, 0), ExtLogValue(LogValue(1))));
  CHECK(tri_dominates(far, prefix) == Decision::No);

  // Smaller than the last known disc: depends on the tail.
  BerkovichPoint below(Disc(t + t2, ExtLogValue(LogValue(5))));
  CHECK(tri_dominates(below, prefix) == Decision::Undecidable);
  CHECK_THROWS(dominates(below, prefix));

  // The prefix cannot dominate anything its last disc fails to dominate,
  // and cannot be known to dominate anything else.
  CHECK(tri_dominates(prefix, BerkovichPoint(gauss_disc(F3))) == Decision::No);
  CHECK(tri_dominates(prefix, below) == Decision::Undecidable);
  CHECK(tri_dominates(prefix, prefix) == Decision::Yes);

  // Walking up the path from a prefix works down to the last disc.
  CHECK(same_point(path_point(prefix, ExtLogValue(LogValue(1))),
                   BerkovichPoint(Disc(t, ExtLogValue(LogValue(1))))));
  CHECK_THROWS(path_point(prefix, ExtLogValue(LogValue(4))));

  // Malformed chains.
  CHECK_THROWS(BerkovichPoint::seq_prefix({}));
  CHECK_THROWS(BerkovichPoint::seq_prefix(
      {Disc(HahnElement::zero(F3), ExtLogValue(LogValue(2))), Disc(t, ExtLogValue(LogValue(1)))}));
  CHECK_THROWS(BerkovichPoint::seq_prefix(
      {Disc(HahnElement::zero(F3), ExtLogValue(LogValue(1))),
       Disc(HahnElement::monomial(F3, 1, 0), ExtLogValue(LogValue(2)))}));
  CHECK_THROWS(BerkovichPoint::seq_prefix({Disc(t, ExtLogValue::infinity())}));
}

TEST_CASE("classification against the rational value group") {
  const FqField F2(2);
  const HahnElement t = HahnElement::monomial(F2, 1, 1);
  CHECK(classify(BerkovichPoint(Disc(HahnElement::zero(F2), ExtLogValue::infinity()))) ==
        PointType::TypeI);
  CHECK(classify(BerkovichPoint(Disc(t, ExtLogValue(make_rat(3, 2))))) == PointType::TypeII);
  CHECK(classify(BerkovichPoint(Disc(t, ExtLogValue(LogValue::sqrt2())))) == PointType::TypeIII);
  CHECK(classify(BerkovichPoint(gauss_disc(F2))) == PointType::TypeII);
}

TEST_CASE("path points and meets") {
  const FqField F3(3);
  const HahnElement t = HahnElement::monomial(F3, 1, 1);
  BerkovichPoint classical(Disc(t, ExtLogValue::infinity()));

  CHECK(same_point(path_point(classical, ExtLogValue(LogValue(1))),
                   BerkovichPoint(Disc(HahnElement::zero(F3), ExtLogValue(LogValue(1))))));
  CHECK(same_point(path_point(classical, ExtLogValue(LogValue(0))),
                   BerkovichPoint(gauss_disc(F3))));
  BerkovichPoint alpha(Disc(t, ExtLogValue(LogValue(2))));
  CHECK(same_point(path_point(alpha, alpha.disc().s), alpha));
  CHECK_THROWS(path_point(alpha, ExtLogValue(LogValue(3))));
  CHECK_THROWS(path_point(alpha, ExtLogValue(LogValue(-1))));

  BerkovichPoint zero_classical(Disc(HahnElement::zero(F3), ExtLogValue::infinity()));
  BerkovichPoint m = meet(zero_classical, classical);
  CHECK(same_point(m, BerkovichPoint(Disc(HahnElement::zero(F3), ExtLogValue(LogValue(1))))));
  CHECK(same_point(meet(alpha, BerkovichPoint(gauss_disc(F3))), BerkovichPoint(gauss_disc(F3))));
  CHECK(same_point(meet(alpha, alpha), alpha));

  // meet is the least common dominator: any other dominator sits above it.
  const FqField fields[] = {FqField(2), FqField(3), FqField(5)};
  std::uniform_int_distribution<int> pick(0, 2);
  for (int iter = 0; iter < 100; ++iter) {
    const FqField& F = fields[pick(rng)];
    BerkovichPoint a(random_disc(F));
    BerkovichPoint b(random_disc(F));
    BerkovichPoint j = meet(a, b);
    CHECK(dominates(j, a));
    CHECK(dominates(j, b));
    BerkovichPoint g(random_disc(F));
    if (dominates(g, a) && dominates(g, b)) CHECK(dominates(g, j));
  }
}

TEST_CASE("value of a factored polynomial off versus on a root disc") {
  const FqField F3(3);
  const HahnElement half = HahnElement::monomial(F3, 1, make_rat(1, 2));

  // x^2 - t over a field of odd characteristic, around the root t^{1/2}.
  std::vector<HahnElement> roots = {half, -half};
  DisjointDiscReport rep =
      check_disjoint_discs(roots, LogValue(0), 0, LogValue(1), HahnElement::zero(F3));
  CHECK(rep.hypothesis_ok);
  CHECK(rep.at_point == ExtLogValue(LogValue(1)));
  CHECK(rep.on_disc == ExtLogValue(make_rat(3, 2)));
  CHECK(rep.ok());

  // A single root at the origin, evaluated at a unit.
  DisjointDiscReport one = check_disjoint_discs({HahnElement::zero(F3)}, LogValue(0), 0,
                                                LogValue(1), HahnElement::monomial(F3, 1, 0));
  CHECK(one.hypothesis_ok);
  CHECK(one.at_point == ExtLogValue(LogValue(0)));
  CHECK(one.on_disc == ExtLogValue(LogValue(1)));
  CHECK(one.ok());

  // Point inside the disc: hypothesis fails and is reported.
  DisjointDiscReport bad = check_disjoint_discs({HahnElement::zero(F3)}, LogValue(0), 0,
                                                LogValue(1), HahnElement::monomial(F3, 1, 1));
  CHECK_FALSE(bad.hypothesis_ok);
  CHECK_FALSE(bad.ok());
}

TEST_CASE("sublevel loci decompose into disjoint discs") {
  const FqField F3(3);
  const HahnElement c = HahnElement::monomial(F3, 1, 0);

  DiscSet single = union_discs(F3, {{{HahnElement::zero(F3)}, LogValue(0), LogValue(1)}});
  REQUIRE(single.discs.size() == 1);
  CHECK(same_disc(single.discs[0], Disc(HahnElement::zero(F3), ExtLogValue(LogValue(1)))));

  DiscSet pair = union_discs(F3, {{{HahnElement::zero(F3), c}, LogValue(0), LogValue(2)}});
  REQUIRE(pair.discs.size() == 2);
  CHECK(disc_disjoint(pair.discs[0], pair.discs[1]));
  CHECK(disc_set_contains(pair, HahnElement::monomial(F3, 1, 2)));
  CHECK(disc_set_contains(pair, c + HahnElement::monomial(F3, 1, 2)));
  CHECK_FALSE(disc_set_contains(pair, HahnElement::monomial(F3, 1, 1)));

  DiscSet whole = union_discs(F3, {{{HahnElement::zero(F3), c}, LogValue(0), LogValue(0)}});
  REQUIRE(whole.discs.size() == 1);
  CHECK(same_disc(whole.discs[0], gauss_disc(F3)));

  // Constant constraints are all-or-nothing.
  CHECK(union_discs(F3, {{{}, LogValue(0), LogValue(5)}}).discs.empty());
  CHECK(union_discs(F3, {{{}, LogValue(5), LogValue(5)}}).discs.size() == 1);

  // A root outside the unit disc only shifts the constant.
  PolyConstraint outside{{HahnElement::monomial(F3, 1, -1)}, LogValue(0), LogValue(0)};
  CHECK(union_discs(F3, {outside}).discs.empty());
  outside.bound = LogValue(-1);
  CHECK(union_discs(F3, {outside}).discs.size() == 1);

  // Intersection of two loci.
  DiscSet both = union_discs(F3, {{{HahnElement::zero(F3), c}, LogValue(0), LogValue(2)},
                                  {{HahnElement::zero(F3)}, LogValue(0), LogValue(1)}});
  REQUIRE(both.discs.size() == 1);
  CHECK(same_disc(both.discs[0], Disc(HahnElement::zero(F3), ExtLogValue(LogValue(2)))));
}

TEST_CASE("membership in a computed locus matches direct evaluation") {
  const FqField fields[] = {FqField(2), FqField(3), FqField(5)};
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> nroots(0, 4), ncons(1, 3);
  std::uniform_int_distribution<long> bnum(-2, 10), bden(1, 2);
  for (int iter = 0; iter < 60; ++iter) {
    const FqField& F = fields[pick(rng)];
    std::vector<PolyConstraint> cons;
    std::vector<HahnElement> pool;
    for (int k = ncons(rng); k > 0; --k) {
      PolyConstraint pc{{}, make_rat(bnum(rng), bden(rng)), make_rat(bnum(rng), bden(rng))};
      for (int r = nroots(rng); r > 0; --r) {
        pc.roots.push_back(random_center(F));
        pool.push_back(pc.roots.back());
      }
      cons.push_back(std::move(pc));
    }
    DiscSet locus = union_discs(F, cons);

    for (size_t i = 0; i < locus.discs.size(); ++i)
      for (size_t j = i + 1; j < locus.discs.size(); ++j)
        CHECK(disc_disjoint(locus.discs[i], locus.discs[j]));

    for (int s = 0; s < 50; ++s) {
      HahnElement x = random_center(F);
      // Bias some samples toward the roots, where the locus boundary sits.
      if (!pool.empty() && s % 3 == 0) {
        std::uniform_int_distribution<size_t> at(0, pool.size() - 1);
        x = pool[at(rng)] + (s % 6 == 0 ? HahnElement::zero(F) : x);
      }
      bool direct = true;
      for (const PolyConstraint& pc : cons) direct = direct && constraint_holds(pc, x);
      CHECK(disc_set_contains(locus, x) == direct);
    }
  }
}
