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

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "padic/finite_field.hpp"
#include "padic/log_value.hpp"

namespace padic {

// Finite sum of monomials c * t^e with c in F_q and e rational: an element
// of the perfect Hahn-series model in characteristic p.  Terms are kept
// sorted by exponent with zero coefficients dropped, so the first term
// carries the valuation.  The model is perfect: p-th roots exist exactly
// (coefficientwise inverse Frobenius, exponents divided by p).
class HahnElement {
 public:
  struct Term {
    mpq_class exp;
    FqField::Elem coeff;
  };

  explicit HahnElement(FqField field) : field_(std::move(field)) {}
  HahnElement(FqField field, std::vector<Term> terms) : field_(std::move(field)) {
    std::map<mpq_class, FqField::Elem> acc;
    for (const auto& t : terms) {
      if (!field_.valid(t.coeff)) fail("HahnElement", "coefficient not in field");
      mpq_class e = t.exp;
      e.canonicalize();  // raw inputs may arrive as 3/6; equality needs canonical form
      auto [it, fresh] = acc.emplace(std::move(e), t.coeff);
      if (!fresh) it->second = field_.add(it->second, t.coeff);
    }
    for (auto& [e, c] : acc)
      if (c != 0) terms_.push_back({e, c});
  }

  static HahnElement zero(FqField field) { return HahnElement(std::move(field)); }
  static HahnElement monomial(FqField field, FqField::Elem coeff, const mpq_class& exp) {
    return HahnElement(std::move(field), {{exp, coeff}});
  }

  const FqField& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // min exponent; +infinity for the zero element.
  ExtLogValue valuation() const {
    if (terms_.empty()) return ExtLogValue::infinity();
    return ExtLogValue(LogValue(terms_.front().exp));
  }

  HahnElement operator-() const {
    HahnElement r(field_);
    for (const auto& t : terms_) r.terms_.push_back({t.exp, field_.neg(t.coeff)});
    return r;
  }

  friend HahnElement operator+(const HahnElement& x, const HahnElement& y) {
    x.check_same_field(y, "HahnElement+");
    std::vector<Term> all = x.terms_;
    all.insert(all.end(), y.terms_.begin(), y.terms_.end());
    return HahnElement(x.field_, std::move(all));
  }
  friend HahnElement operator-(const HahnElement& x, const HahnElement& y) { return x + (-y); }

  friend HahnElement operator*(const HahnElement& x, const HahnElement& y) {
    x.check_same_field(y, "HahnElement*");
    std::vector<Term> prod;
    prod.reserve(x.terms_.size() * y.terms_.size());
    for (const auto& s : x.terms_)
      for (const auto& t : y.terms_)
        prod.push_back({s.exp + t.exp, x.field_.mul(s.coeff, t.coeff)});
    return HahnElement(x.field_, std::move(prod));
  }

  HahnElement pow(unsigned long e) const {
    HahnElement r = monomial(field_, field_.one(), 0);
    HahnElement base = *this;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  // x -> x^p is termwise in characteristic p.
  HahnElement frobenius() const {
    HahnElement r(field_);
    const long p = field_.p();
    for (const auto& t : terms_) r.terms_.push_back({t.exp * p, field_.frobenius(t.coeff)});
    return r;
  }

  // The unique p-th root: coefficients through the inverse Frobenius,
  // exponents divided by p.
  HahnElement pth_root() const {
    HahnElement r(field_);
    const long p = field_.p();
    for (const auto& t : terms_) r.terms_.push_back({t.exp / p, field_.pth_root(t.coeff)});
    return r;
  }

  // Terms with exponent strictly below s, i.e. the head z truncates to when
  // walking a path of radius s.
  HahnElement truncate_below(const LogValue& s) const {
    HahnElement r(field_);
    for (const auto& t : terms_)
      if (LogValue(t.exp) < s) r.terms_.push_back(t);
    return r;
  }

  friend bool operator==(const HahnElement& x, const HahnElement& y) {
    if (!(x.field_ == y.field_) || x.terms_.size() != y.terms_.size()) return false;
    for (size_t i = 0; i < x.terms_.size(); ++i)
      if (x.terms_[i].exp != y.terms_[i].exp || x.terms_[i].coeff != y.terms_[i].coeff)
        return false;
    return true;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(t.coeff) + "*t^(" + t.exp.get_str() + ")";
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const HahnElement& h) { return os << h.str(); }

 private:
  void check_same_field(const HahnElement& o, const char* op) const {
    if (!(field_ == o.field_)) fail(op, "operands live in different fields");
  }

  FqField field_;
  std::vector<Term> terms_;
};

}  // namespace padic
