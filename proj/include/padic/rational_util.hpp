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

#include <gmpxx.h>

#include <string>

#include "padic/error.hpp"

namespace padic {

inline mpq_class make_rat(long num, long den = 1) {
  if (den == 0) fail("make_rat", "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "n" or "n/d", base 10.
inline mpq_class parse_rat(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0)
    fail("parse_rat", "not a rational: '" + text + "'");
  if (q.get_den() == 0) fail("parse_rat", "zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

// Canonical "num/den" form, denominator always present.
inline std::string rat_str(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline mpz_class rat_floor(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline mpz_class rat_ceil(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline bool rat_is_integer(const mpq_class& q) { return q.get_den() == 1; }

inline mpq_class rat_pow(const mpq_class& q, unsigned long e) {
  mpq_class r;
  mpz_pow_ui(r.get_num().get_mpz_t(), q.get_num().get_mpz_t(), e);
  mpz_pow_ui(r.get_den().get_mpz_t(), q.get_den().get_mpz_t(), e);
  r.canonicalize();
  return r;
}

// p-adic valuation of a nonzero rational; p >= 2.
inline long rat_pval(const mpq_class& q, unsigned long p) {
  if (q == 0) fail("rat_pval", "valuation of zero");
  mpz_class pz(static_cast<long>(p)), tmp;
  long v = 0;
  mpz_class n = q.get_num();
  while (mpz_divisible_p(n.get_mpz_t(), pz.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
    ++v;
  }
  mpz_class d = q.get_den();
  while (mpz_divisible_p(d.get_mpz_t(), pz.get_mpz_t())) {
    mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
    --v;
  }
  return v;
}

}  // namespace padic
