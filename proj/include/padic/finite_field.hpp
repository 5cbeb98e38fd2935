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

#include <cstdint>
#include <vector>

#include "padic/error.hpp"

namespace padic {

// Arithmetic in F_q, q = p^m, for small q.  Elements are encoded as the
// base-p digits of their polynomial representative modulo a monic
// irreducible modulus found by exhaustive search (deterministic: the
// smallest one in the digit encoding).  The encoding makes 0 -> 0 and
// 1 -> 1, and F_p sits at codes 0..p-1.
class FqField {
 public:
  using Elem = std::uint32_t;

  explicit FqField(unsigned p, unsigned m = 1) : p_(p), m_(m) {
    if (p < 2 || !is_prime(p)) fail("FqField", "p must be a prime >= 2");
    if (m < 1 || m > 20) fail("FqField", "extension degree out of range");
    q_ = 1;
    for (unsigned i = 0; i < m; ++i) {
      q_ *= p;
      if (q_ > (1u << 20)) fail("FqField", "q = p^m too large for this model");
    }
    modulus_ = find_irreducible();
  }

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  std::uint64_t q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  friend bool operator==(const FqField& x, const FqField& y) {
    return x.p_ == y.p_ && x.m_ == y.m_;
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long n) const {
    long r = n % static_cast<long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }
  bool valid(Elem x) const { return x < q_; }

  Elem add(Elem x, Elem y) const {
    check(x), check(y);
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i, scale *= p_, x /= p_, y /= p_)
      r += ((x + y) % p_) % p_ * scale;
    return r;
  }
  Elem neg(Elem x) const {
    check(x);
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i, scale *= p_, x /= p_)
      r += ((p_ - x % p_) % p_) * scale;
    return r;
  }
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }

  Elem mul(Elem x, Elem y) const {
    check(x), check(y);
    std::vector<unsigned> prod(2 * m_ - 1, 0);
    const auto dx = digits(x), dy = digits(y);
    for (unsigned i = 0; i < m_; ++i)
      for (unsigned j = 0; j < m_; ++j)
        prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p_;
    reduce(prod);
    return encode(prod);
  }

  Elem pow(Elem x, std::uint64_t e) const {
    Elem r = one(), base = x;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Elem inv(Elem x) const {
    if (x == 0) fail("FqField::inv", "inverse of zero");
    return pow(x, q_ - 2);
  }

  Elem frobenius(Elem x) const { return pow(x, p_); }
  // Inverse of Frobenius: every element of F_q has the unique p-th root
  // x^(p^(m-1)).
  Elem pth_root(Elem x) const {
    Elem r = x;
    for (unsigned i = 0; i + 1 < m_; ++i) r = frobenius(r);
    return r;
  }

 private:
  static bool is_prime(unsigned n) {
    for (unsigned d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return n >= 2;
  }

  void check(Elem x) const {
    if (!valid(x)) fail("FqField", "element code out of range");
  }

  std::vector<unsigned> digits(Elem x) const {
    std::vector<unsigned> d(m_, 0);
    for (unsigned i = 0; i < m_; ++i, x /= p_) d[i] = x % p_;
    return d;
  }
  Elem encode(const std::vector<unsigned>& d) const {
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i, scale *= p_) r += d[i] % p_ * scale;
    return r;
  }

  // In-place reduction of a digit polynomial modulo the (monic) modulus.
  void reduce(std::vector<unsigned>& poly) const {
    for (size_t d = poly.size(); d-- > m_;) {
      const unsigned c = poly[d];
      if (c == 0) continue;
      poly[d] = 0;
      // x^d = x^(d-m) * (x^m) = -x^(d-m) * (modulus - x^m)
      for (unsigned i = 0; i < m_; ++i) {
        const unsigned sub = c * modulus_[i] % p_;
        poly[d - m_ + i] = (poly[d - m_ + i] + p_ - sub) % p_;
      }
    }
    poly.resize(m_);
  }

  // Smallest monic irreducible of degree m over F_p, by trial division
  // against every monic polynomial of degree 1..m/2.  Returned as the m
  // low coefficients (the x^m coefficient is implicitly 1).
  std::vector<unsigned> find_irreducible() const {
    if (m_ == 1) return {0};  // x itself; reduction never uses it for m=1
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m_; ++i) count *= p_;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<unsigned> cand(m_ + 1, 1);  // monic
      std::uint64_t c = code;
      for (unsigned i = 0; i < m_; ++i, c /= p_) cand[i] = c % p_;
      if (cand[0] == 0) continue;  // divisible by x
      if (is_irreducible(cand)) return {cand.begin(), cand.begin() + m_};
    }
    fail("FqField", "no irreducible polynomial found");  // unreachable
  }

  bool is_irreducible(const std::vector<unsigned>& f) const {
    const unsigned deg = static_cast<unsigned>(f.size()) - 1;
    for (unsigned d = 1; 2 * d <= deg; ++d) {
      std::uint64_t count = 1;
      for (unsigned i = 0; i < d; ++i) count *= p_;
      for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<unsigned> g(d + 1, 1);
        std::uint64_t c = code;
        for (unsigned i = 0; i < d; ++i, c /= p_) g[i] = c % p_;
        if (divides(g, f)) return false;
      }
    }
    return true;
  }

  bool divides(const std::vector<unsigned>& g, std::vector<unsigned> f) const {
    const size_t dg = g.size() - 1;
    for (size_t d = f.size(); d-- > dg;) {
      const unsigned c = f[d];  // g is monic, so the quotient digit is c
      if (c == 0) continue;
      for (size_t i = 0; i <= dg; ++i)
        f[d - dg + i] = (f[d - dg + i] + p_ - c * g[i] % p_) % p_;
    }
    for (size_t i = 0; i < dg; ++i)
      if (f[i] != 0) return false;
    return true;
  }

  unsigned p_, m_;
  std::uint64_t q_;
  std::vector<unsigned> modulus_;
};

}  // namespace padic
