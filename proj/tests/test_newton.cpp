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

#include "padic/newton.hpp"

using namespace padic;

namespace {

std::mt19937_64 rng(7102);

mpq_class random_rat(long span = 10, long max_den = 6) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, max_den);
  return make_rat(num(rng), den(rng));
}

ValuedPoly random_poly(int max_terms = 4) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<long> expo(-4, 4);
  std::vector<ValuedPoly::Term> ts;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    const long e = expo(rng);
    bool dup = false;
    for (const auto& t : ts) dup = dup || t.exp == e;
    if (!dup) ts.push_back({e, LogValue(random_rat())});
  }
  return ValuedPoly(std::move(ts));
}

// Merged ascending (slope, mult) list of a hull cell at a sample point.
std::vector<std::pair<LogValue, long>> slopes_at(const ParamHull& hull, const LogValue& r) {
  std::vector<std::pair<LogValue, long>> out;
  for (const auto& e : hull.cell_at(r).edges) {
    const LogValue s = e.at(r);
    if (!out.empty() && out.back().first == s)
      out.back().second += e.mult;
    else
      out.push_back({s, e.mult});
  }
  return out;
}

}  // namespace

TEST_CASE("gauss valuation picks the minimal term") {
  const ValuedPoly P({{0, LogValue(0)}, {1, LogValue(-2)}});
  CHECK(gauss_val(P, LogValue(1)) == LogValue(-1));
  CHECK(gauss_val(P, LogValue(3)) == LogValue(0));
  CHECK(gauss_val(P, LogValue(make_rat(1, 2))) == LogValue(make_rat(-3, 2)));
}

TEST_CASE("duplicate exponents are rejected") {
  CHECK_THROWS(ValuedPoly({{2, LogValue(0)}, {2, LogValue(1)}}));
  CHECK_THROWS(newton_polygon({{0, LogValue(0)}, {0, LogValue(1)}}));
}

TEST_CASE("lower hull with ascending slopes") {
  const auto hull = newton_polygon({{0, LogValue(2)}, {1, LogValue(0)}, {2, LogValue(0)}});
  REQUIRE(hull.edges.size() == 2);
  CHECK(hull.edges[0].slope == LogValue(-2));
  CHECK(hull.edges[0].mult == 1);
  CHECK(hull.edges[1].slope == LogValue(0));
  CHECK(hull.edges[1].mult == 1);

  const auto flat = newton_polygon({{0, LogValue(0)}, {1, LogValue(5)}, {2, LogValue(0)}});
  REQUIRE(flat.edges.size() == 1);
  CHECK(flat.edges[0].slope == LogValue(0));
  CHECK(flat.edges[0].mult == 2);

  const auto merged = newton_polygon({{0, LogValue(0)}, {1, LogValue(1)}, {2, LogValue(2)}});
  REQUIRE(merged.edges.size() == 1);
  CHECK(merged.edges[0].slope == LogValue(1));
  CHECK(merged.edges[0].mult == 2);
}

TEST_CASE("bivariate gauss valuation") {
  const BivariatePoly B({{1, 0, 0}});
  CHECK(gauss_val2(B, LogValue(1), LogValue(2)) == LogValue(2));
  const BivariatePoly C({{0, make_rat(1, 2), 0}, {2, 0, 1}});
  // min(1/2, r + 2 s r)
  CHECK(gauss_val2(C, LogValue(1), LogValue(0)) == LogValue(make_rat(1, 2)));
  CHECK(gauss_val2(C, LogValue(make_rat(1, 8)), LogValue(1)) == LogValue(make_rat(3, 8)));
}

TEST_CASE("parametric hull on the worked two-height family") {
  // V_0(r) = min(2, r), V_1(r) = 0 on (0,4)
  const ValuedPoly P0({{0, LogValue(2)}, {1, LogValue(0)}});
  const ValuedPoly P1({{0, LogValue(0)}});
  const auto hull = parametric_hull({{0, P0}, {1, P1}}, Interval::open(LogValue(0), LogValue(4)));
  REQUIRE(hull.cells.size() == 2);
  CHECK(hull.cells[0].where.lo == LogValue(0));
  CHECK(hull.cells[0].where.hi == LogValue(2));
  REQUIRE(hull.cells[0].edges.size() == 1);
  CHECK(hull.cells[0].edges[0].c0 == LogValue(0));
  CHECK(hull.cells[0].edges[0].c1 == LogValue(-1));  // slope -r
  CHECK(hull.cells[0].edges[0].mult == 1);
  REQUIRE(hull.cells[1].edges.size() == 1);
  CHECK(hull.cells[1].edges[0].c0 == LogValue(-2));  // slope -2
  CHECK(hull.cells[1].edges[0].c1 == LogValue(0));
  CHECK(hull.cells[1].edges[0].mult == 1);
}

TEST_CASE("parametric hull matches pointwise polygons") {
  std::uniform_int_distribution<int> npolys(2, 6);
  std::uniform_int_distribution<long> denp(1, 6), nump(1, 29);
  for (int inst = 0; inst < 120; ++inst) {
    const int n = npolys(rng);
    std::vector<std::pair<long, ValuedPoly>> polys;
    for (long i = 0; i < n; ++i) polys.push_back({i, random_poly()});
    const Interval window = Interval::open(LogValue(0), LogValue(3));
    const ParamHull hull = parametric_hull(polys, window);

    // exact cover of the window by consecutive cells
    CHECK(hull.cells.front().where.lo == window.lo);
    CHECK(hull.cells.back().where.hi == window.hi);
    for (size_t c = 0; c + 1 < hull.cells.size(); ++c)
      CHECK(hull.cells[c].where.hi == hull.cells[c + 1].where.lo);

    for (int s = 0; s < 25; ++s) {
      const LogValue r(make_rat(nump(rng), 10 * denp(rng)));  // in (0, 2.9]
      std::vector<NewtonPoint> pts;
      for (const auto& [i, P] : polys) pts.push_back({i, gauss_val(P, r)});
      const NewtonPolygon direct = newton_polygon(std::move(pts));
      const auto param = slopes_at(hull, r);
      REQUIRE(param.size() == direct.edges.size());
      for (size_t e = 0; e < param.size(); ++e) {
        CHECK(param[e].first == direct.edges[e].slope);
        CHECK(param[e].second == direct.edges[e].mult);
      }
    }
  }
}

TEST_CASE("gauss valuations are concave per variable") {
  for (int i = 0; i < 100; ++i) {
    const ValuedPoly P = random_poly();
    const LogValue x(random_rat(5, 4)), y(random_rat(5, 4));
    const LogValue mid = (x + y) / 2;
    CHECK(!(gauss_val(P, mid) < (gauss_val(P, x) + gauss_val(P, y)) / 2));
  }
  const BivariatePoly B({{0, make_rat(1, 2), 0}, {2, 0, 1}, {1, 1, make_rat(-1, 3)}});
  for (int i = 0; i < 100; ++i) {
    const LogValue s(random_rat(4, 3));
    const LogValue x(random_rat(4, 3)), y(random_rat(4, 3));
    const LogValue mid = (x + y) / 2;
    // concave in r for fixed s
    CHECK(!(gauss_val2(B, mid, s) < (gauss_val2(B, x, s) + gauss_val2(B, y, s)) / 2));
    // concave in s for fixed r
    CHECK(!(gauss_val2(B, s, mid) < (gauss_val2(B, s, x) + gauss_val2(B, s, y)) / 2));
  }
}

TEST_CASE("rational laurent helpers") {
  RationalLaurent r(std::map<long, mpq_class>{{1, mpq_class(9)}, {3, make_rat(1, 3)}});
  const ValuedPoly v = r.to_valued(3);
  REQUIRE(v.terms().size() == 2);
  CHECK(v.terms()[0].val == LogValue(2));   // v_3(9) = 2
  CHECK(v.terms()[1].val == LogValue(-1));  // v_3(1/3) = -1

  // (x+1)^2 = x^2 + 2x + 1
  RationalLaurent sq(std::map<long, mpq_class>{{2, mpq_class(1)}});
  const auto t = sq.translated(1);
  CHECK(t.coeffs().at(0) == 1);
  CHECK(t.coeffs().at(1) == 2);
  CHECK(t.coeffs().at(2) == 1);

  // substitution: 5 * x^4 * r(x^3) with r = x
  const auto s = RationalLaurent(std::map<long, mpq_class>{{1, mpq_class(1)}}).substituted(3, 4, 5);
  REQUIRE(s.coeffs().size() == 1);
  CHECK(s.coeffs().at(7) == 5);
}
