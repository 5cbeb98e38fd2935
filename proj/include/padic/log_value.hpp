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

#include <compare>
#include <ostream>
#include <string>

#include "padic/error.hpp"
#include "padic/rational_util.hpp"

namespace padic {

// Element a + b*sqrt(2) of the real quadratic field Q(sqrt 2), ordered by
// its real embedding.  All comparisons are exact: the sign of a + b*sqrt(2)
// is decided by the signs of a, b and, in the mixed case, by comparing
// a^2 with 2 b^2 (equality is impossible for b != 0 since sqrt 2 is
// irrational).  These values carry log-radii, slopes and valuations
// throughout the library.
class LogValue {
 public:
  // Raw mpq_class inputs need not be canonical (mpq_class(3, 6) is legal),
  // but mpq equality assumes canonical form, so normalize on entry.
  LogValue() : a_(0), b_(0) {}
  LogValue(long a) : a_(a), b_(0) {}                 // NOLINT(runtime/explicit)
  LogValue(const mpq_class& a) : a_(a), b_(0) { a_.canonicalize(); }  // NOLINT(runtime/explicit)
  LogValue(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static LogValue sqrt2(const mpq_class& coeff = 1) { return LogValue(0, coeff); }

  const mpq_class& rat() const { return a_; }
  const mpq_class& irr() const { return b_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  int sign() const {
    const int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Mixed signs: |a| vs |b|*sqrt2, squared.  a^2 == 2 b^2 cannot happen.
    const int cmp2 = cmp(a_ * a_, 2 * b_ * b_);
    return cmp2 > 0 ? sa : sb;
  }

  LogValue operator-() const { return LogValue(-a_, -b_); }
  LogValue& operator+=(const LogValue& o) { a_ += o.a_; b_ += o.b_; return *this; }
  LogValue& operator-=(const LogValue& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  LogValue& operator*=(const mpq_class& c) { a_ *= c; b_ *= c; return *this; }

  friend LogValue operator+(LogValue x, const LogValue& y) { return x += y; }
  friend LogValue operator-(LogValue x, const LogValue& y) { return x -= y; }
  friend LogValue operator*(LogValue x, const mpq_class& c) { return x *= c; }
  friend LogValue operator*(const mpq_class& c, LogValue x) { return x *= c; }
  friend LogValue operator*(LogValue x, long c) { return x *= mpq_class(c); }
  friend LogValue operator*(long c, LogValue x) { return x *= mpq_class(c); }

  // Full field product and quotient; the quotient rationalizes by the
  // conjugate (c^2 - 2 d^2 vanishes only for c = d = 0).
  friend LogValue operator*(const LogValue& x, const LogValue& y) {
    return LogValue(x.a_ * y.a_ + 2 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
  }
  friend LogValue operator/(const LogValue& x, const LogValue& y) {
    if (y.is_zero()) fail("LogValue/", "division by zero");
    const mpq_class n = y.a_ * y.a_ - 2 * y.b_ * y.b_;
    return LogValue((x.a_ * y.a_ - 2 * x.b_ * y.b_) / n, (x.b_ * y.a_ - x.a_ * y.b_) / n);
  }
  LogValue operator/(const mpq_class& c) const {
    if (c == 0) fail("LogValue/", "division by zero");
    return LogValue(a_ / c, b_ / c);
  }
  LogValue operator/(long c) const { return *this / mpq_class(c); }

  friend bool operator==(const LogValue& x, const LogValue& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const LogValue& x, const LogValue& y) {
    if (x == y) return std::strong_ordering::equal;
    return (x - y).sign() < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  // Largest integer <= value.  Exact: bracket with the convergents
  // 239/169 < sqrt2 < 577/408, then binary-search with exact sign tests.
  mpz_class floor() const {
    if (b_ == 0) return rat_floor(a_);
    const mpq_class lo_s2(239, 169), hi_s2(577, 408);
    mpq_class lo_bound = a_ + b_ * (b_ > 0 ? lo_s2 : hi_s2);
    mpq_class hi_bound = a_ + b_ * (b_ > 0 ? hi_s2 : lo_s2);
    mpz_class lo = rat_floor(lo_bound), hi = rat_floor(hi_bound) + 1;
    // Invariant: value >= lo and value < hi + 1; shrink to lo = floor.
    while (lo < hi) {
      mpz_class mid = (lo + hi + 1) / 2;  // rounds up, so mid > lo
      if ((*this - LogValue(mpq_class(mid))).sign() >= 0)
        lo = mid;
      else
        hi = mid - 1;
    }
    return lo;
  }

  std::string str() const {
    if (b_ == 0) return a_.get_str();
    std::string s = (a_ == 0) ? "" : a_.get_str();
    if (b_ > 0 && !s.empty()) s += "+";
    s += b_.get_str() + "*sqrt2";
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const LogValue& v) { return os << v.str(); }

 private:
  mpq_class a_, b_;
};

inline const LogValue& min(const LogValue& x, const LogValue& y) { return y < x ? y : x; }
inline const LogValue& max(const LogValue& x, const LogValue& y) { return x < y ? y : x; }

// LogValue extended with +infinity; carries valuations of possibly-zero
// elements and radii of classical points.
class ExtLogValue {
 public:
  ExtLogValue() : inf_(true) {}
  ExtLogValue(LogValue v) : inf_(false), v_(std::move(v)) {}  // NOLINT
  static ExtLogValue infinity() { return ExtLogValue(); }

  bool is_infinite() const { return inf_; }
  const LogValue& finite() const {
    if (inf_) fail("ExtLogValue::finite", "value is infinite");
    return v_;
  }

  friend bool operator==(const ExtLogValue& x, const ExtLogValue& y) {
    if (x.inf_ || y.inf_) return x.inf_ == y.inf_;
    return x.v_ == y.v_;
  }
  friend bool operator<(const ExtLogValue& x, const ExtLogValue& y) {
    if (y.inf_) return !x.inf_;
    if (x.inf_) return false;
    return x.v_ < y.v_;
  }
  friend bool operator<=(const ExtLogValue& x, const ExtLogValue& y) { return x == y || x < y; }
  friend bool operator>(const ExtLogValue& x, const ExtLogValue& y) { return y < x; }
  friend bool operator>=(const ExtLogValue& x, const ExtLogValue& y) { return y <= x; }

  friend ExtLogValue operator+(const ExtLogValue& x, const ExtLogValue& y) {
    if (x.inf_ || y.inf_) return infinity();
    return ExtLogValue(x.v_ + y.v_);
  }

  std::string str() const { return inf_ ? "inf" : v_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const ExtLogValue& v) { return os << v.str(); }

 private:
  bool inf_;
  LogValue v_;
};

inline ExtLogValue min(const ExtLogValue& x, const ExtLogValue& y) { return y < x ? y : x; }

}  // namespace padic
