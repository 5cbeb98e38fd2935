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

#include "padic/valuation.hpp"

using namespace padic;

namespace {

std::mt19937_64 rng(77123);

LogValue random_positive_rational() {
  std::uniform_int_distribution<long> num(1, 12), den(1, 12);
  return LogValue(make_rat(num(rng), den(rng)));
}

LogValue random_positive_irrational() {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 12), b(1, 6);
  std::uniform_int_distribution<int> flip(0, 1);
  while (true) {
    LogValue v(make_rat(num(rng), den(rng)),
               make_rat(flip(rng) ? b(rng) : -b(rng), den(rng)));
    if (v.sign() > 0) return v;
  }
}

}  // namespace

TEST_CASE("invariants of monomial valuations") {
  CHECK(monomial_invariants({LogValue(1), LogValue::sqrt2()}) == InvariantTuple(2, 2, 0));
  CHECK(monomial_invariants({LogValue(1), LogValue(2)}) == InvariantTuple(2, 1, 1));
  CHECK(monomial_invariants({LogValue(1)}) == InvariantTuple(1, 1, 0));

  CHECK_THROWS(monomial_invariants({}));
  CHECK_THROWS(monomial_invariants({LogValue(1), LogValue(0)}));
  CHECK_THROWS(monomial_invariants({LogValue(-1)}));
  CHECK_THROWS(InvariantTuple(1, 1, 1));

  std::uniform_int_distribution<int> dim(1, 6), kind(0, 1);
  for (int iter = 0; iter < 100; ++iter) {
    WeightVector w;
    for (int i = dim(rng); i > 0; --i)
      w.push_back(kind(rng) ? random_positive_rational() : random_positive_irrational());
    InvariantTuple t = monomial_invariants(w);
    CHECK(t.defect == 0);
    CHECK(t.ratrank + t.restrdeg == static_cast<long>(w.size()));
    CHECK((t.ratrank == 1 || t.ratrank == 2));
  }
}

TEST_CASE("extension table") {
  const InvariantTuple base(2, 2, 0);
  CHECK(extend_invariants(base, ExtensionType::TypeII) == InvariantTuple(3, 2, 1));
  CHECK(extend_invariants(base, ExtensionType::TypeIII) == InvariantTuple(3, 3, 0));
  CHECK(extend_invariants(base, ExtensionType::TypeI) == InvariantTuple(3, 2, 0));
  CHECK(extend_invariants(base, ExtensionType::TypeI).defect == 1);
  CHECK(extend_invariants(base, ExtensionType::TypeIV).defect == 1);

  // Chains: the defect counts exactly the type (i)/(iv) steps.
  const ExtensionType kinds[] = {ExtensionType::TypeI, ExtensionType::TypeII,
                                 ExtensionType::TypeIII, ExtensionType::TypeIV};
  std::uniform_int_distribution<int> pick(0, 3);
  for (int iter = 0; iter < 100; ++iter) {
    InvariantTuple t = monomial_invariants({random_positive_rational()});
    long defectful = 0;
    for (int step = 0; step < 5; ++step) {
      ExtensionType k = kinds[pick(rng)];
      if (k == ExtensionType::TypeI || k == ExtensionType::TypeIV) ++defectful;
      t = extend_invariants(t, k);
    }
    CHECK(t.trdeg == 6);
    CHECK(t.defect == defectful);
    CHECK(t.trdeg - t.ratrank - t.restrdeg == t.defect);
  }
}

TEST_CASE("unimodular rewriting of value vectors") {
  {
    std::vector<LogValue> c = {LogValue(1), LogValue(2)};
    IntMatrix A = zariski_matrix(c, 1);
    CHECK(zariski_verify(A, c, 1));
  }
  {
    std::vector<LogValue> c = {LogValue(1), LogValue::sqrt2(),
                               LogValue(1) + LogValue::sqrt2()};
    IntMatrix A = zariski_matrix(c, 2);
    CHECK(zariski_verify(A, c, 2));
  }
  {
    // Negative coordinates force the cone walk.
    std::vector<LogValue> c = {LogValue(1), LogValue::sqrt2(),
                               LogValue(2) - LogValue::sqrt2()};
    IntMatrix A = zariski_matrix(c, 2);
    CHECK(zariski_verify(A, c, 2));
  }
  {
    // Independent values: nothing to do.
    std::vector<LogValue> c = {LogValue(make_rat(3, 2)), LogValue::sqrt2()};
    IntMatrix A = zariski_matrix(c, 2);
    CHECK(A == detail::identity_matrix(2));
    CHECK(zariski_verify(A, c, 2));
  }
  {
    std::vector<LogValue> c = {LogValue(5)};
    CHECK(zariski_verify(zariski_matrix(c, 1), c, 1));
  }

  CHECK_THROWS(zariski_matrix({LogValue(1), LogValue::sqrt2()}, 1));
  CHECK_THROWS(zariski_matrix({LogValue(1), LogValue(2), LogValue::sqrt2()}, 2));
  CHECK_THROWS(zariski_matrix({LogValue(1), LogValue(-1)}, 1));
  CHECK_THROWS(zariski_matrix({LogValue(1)}, 0));
  CHECK_THROWS(zariski_matrix({}, 1));

  // A wrong matrix is rejected by the checker.
  CHECK_FALSE(zariski_verify(detail::identity_matrix(2), {LogValue(1), LogValue(2)}, 1));
}

TEST_CASE("random value vectors satisfy the contract") {
  std::uniform_int_distribution<int> size(1, 5), rank(1, 2);
  std::uniform_int_distribution<long> combo(-4, 4), halves(1, 2);
  for (int iter = 0; iter < 200; ++iter) {
    const int s = size(rng);
    const int r = std::min(rank(rng), s);
    std::vector<LogValue> basis = {random_positive_rational()};
    if (r == 2) basis.push_back(random_positive_irrational());
    std::vector<LogValue> c(basis);
    while (static_cast<int>(c.size()) < s) {
      LogValue v = LogValue(make_rat(combo(rng), halves(rng))) * basis[0];
      if (r == 2) v = v + LogValue(make_rat(combo(rng), halves(rng))) * basis[1];
      if (v.sign() > 0) c.push_back(v);
    }
    IntMatrix A = zariski_matrix(c, r);
    CHECK(zariski_verify(A, c, r));
  }
}
