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
// Valuation-theoretic bookkeeping: rational rank, residual transcendence
// degree and defect for monomial valuations, the type-indexed extension
// table, and a unimodular change of basis that rewrites positive values
// over a chosen rational basis with nonnegative coordinates.

#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "padic/error.hpp"
#include "padic/log_value.hpp"
#include "padic/rational_util.hpp"

namespace padic {

using WeightVector = std::vector<LogValue>;

struct InvariantTuple {
  long trdeg;
  long ratrank;
  long restrdeg;
  long defect;

  InvariantTuple(long td, long rr, long rd)
      : trdeg(td), ratrank(rr), restrdeg(rd), defect(td - rr - rd) {
    if (td < 0 || rr < 0 || rd < 0) fail("InvariantTuple", "negative invariant");
    if (defect < 0) fail("InvariantTuple", "defect must be nonnegative");
  }
  friend bool operator==(const InvariantTuple&, const InvariantTuple&) = default;
};

// Q-rank of the span of finitely many values inside Q + Q*sqrt(2).
inline int value_rank(const std::vector<LogValue>& values) {
  const LogValue* pivot = nullptr;
  for (const LogValue& v : values)
    if (v.sign() != 0) {
      pivot = &v;
      break;
    }
  if (pivot == nullptr) return 0;
  for (const LogValue& v : values)
    if (pivot->rat() * v.irr() != pivot->irr() * v.rat()) return 2;
  return 1;
}

inline InvariantTuple monomial_invariants(const WeightVector& w) {
  if (w.empty()) fail("monomial_invariants", "empty weight vector");
  for (const LogValue& v : w)
    if (v.sign() <= 0) fail("monomial_invariants", "weights must be positive");
  const long n = static_cast<long>(w.size());
  const long rr = value_rank(w);
  return InvariantTuple(n, rr, n - rr);
}

enum class ExtensionType { TypeI, TypeII, TypeIII, TypeIV };

// One step of extending the valued field by a point of the given type:
// transcendence degree always grows; a type (ii) point enlarges the
// residue field, a type (iii) point the value group, and types (i)/(iv)
// neither, so the defect absorbs the step.
inline InvariantTuple extend_invariants(const InvariantTuple& base, ExtensionType t) {
  long rr = base.ratrank;
  long rd = base.restrdeg;
  if (t == ExtensionType::TypeII) rd += 1;
  if (t == ExtensionType::TypeIII) rr += 1;
  return InvariantTuple(base.trdeg + 1, rr, rd);
}

using IntMatrix = std::vector<std::vector<mpz_class>>;

namespace detail {

inline IntMatrix identity_matrix(size_t s) {
  IntMatrix I(s, std::vector<mpz_class>(s, 0));
  for (size_t i = 0; i < s; ++i) I[i][i] = 1;
  return I;
}

inline bool try_inverse(const IntMatrix& M, std::vector<std::vector<mpq_class>>& out) {
  const size_t s = M.size();
  std::vector<std::vector<mpq_class>> w(s, std::vector<mpq_class>(2 * s, 0));
  for (size_t i = 0; i < s; ++i) {
    for (size_t j = 0; j < s; ++j) w[i][j] = mpq_class(M[i][j]);
    w[i][s + i] = 1;
  }
  for (size_t col = 0; col < s; ++col) {
    size_t piv = col;
    while (piv < s && w[piv][col] == 0) ++piv;
    if (piv == s) return false;
    std::swap(w[piv], w[col]);
    const mpq_class lead = w[col][col];
    for (size_t j = 0; j < 2 * s; ++j) w[col][j] /= lead;
    for (size_t i = 0; i < s; ++i) {
      if (i == col || w[i][col] == 0) continue;
      const mpq_class f = w[i][col];
      for (size_t j = 0; j < 2 * s; ++j) w[i][j] -= f * w[col][j];
    }
  }
  out.assign(s, std::vector<mpq_class>(s));
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) out[i][j] = w[i][s + j];
  return true;
}

inline IntMatrix unimodular_inverse(const IntMatrix& M) {
  std::vector<std::vector<mpq_class>> q;
  if (!try_inverse(M, q)) fail("unimodular_inverse", "singular matrix");
  const size_t s = M.size();
  IntMatrix out(s, std::vector<mpz_class>(s));
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j) {
      if (q[i][j].get_den() != 1) fail("unimodular_inverse", "inverse is not integral");
      out[i][j] = q[i][j].get_num();
    }
  return out;
}

// Writes every value as a nonnegative integer combination of a positive
// basis of the group the values generate; returns the s x r coordinate
// matrix.  Rank 2 runs a two-sided Euclidean walk that widens a
// unimodular cone until it holds every value vector; the walk is capped
// defensively, with correctness enforced by the caller's verification.
inline IntMatrix nonneg_coordinates(const std::vector<LogValue>& c, long r) {
  const size_t s = c.size();
  mpz_class D = 1;
  auto fold_den = [&D](const mpq_class& q) {
    const mpz_class den = q.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), D.get_mpz_t(), den.get_mpz_t());
    D = D / g * den;
  };
  for (const LogValue& v : c) {
    fold_den(v.rat());
    fold_den(v.irr());
  }
  std::vector<std::array<mpz_class, 2>> V(s);
  for (size_t i = 0; i < s; ++i) {
    mpq_class a = c[i].rat() * mpq_class(D);
    mpq_class b = c[i].irr() * mpq_class(D);
    V[i] = {a.get_num(), b.get_num()};
  }

  if (r == 1) {
    std::array<mpz_class, 2> u = V[0];
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), u[0].get_mpz_t(), u[1].get_mpz_t());
    u[0] /= g;
    u[1] /= g;
    if (LogValue(mpq_class(u[0]), mpq_class(u[1])).sign() < 0) {
      u[0] = -u[0];
      u[1] = -u[1];
    }
    std::vector<mpz_class> mult(s);
    mpz_class share = 0;
    for (size_t i = 0; i < s; ++i) {
      mult[i] = u[0] != 0 ? mpz_class(V[i][0] / u[0]) : mpz_class(V[i][1] / u[1]);
      if (V[i][0] != mult[i] * u[0] || V[i][1] != mult[i] * u[1] || mult[i] <= 0)
        fail("zariski_matrix", "rank-1 values are not commensurable");
      mpz_gcd(share.get_mpz_t(), share.get_mpz_t(), mult[i].get_mpz_t());
    }
    IntMatrix beta(s, std::vector<mpz_class>(1));
    for (size_t i = 0; i < s; ++i) beta[i][0] = mult[i] / share;
    return beta;
  }

  // Lattice basis (g1, g2) of the span of the integer vectors.
  std::array<mpz_class, 2> g1{0, 0}, g2{0, 0};
  {
    std::vector<std::array<mpz_class, 2>> work = V;
    while (true) {
      size_t best = work.size();
      for (size_t i = 0; i < work.size(); ++i)
        if (work[i][0] != 0 &&
            (best == work.size() || mpz_cmpabs(work[i][0].get_mpz_t(),
                                               work[best][0].get_mpz_t()) < 0))
          best = i;
      if (best == work.size()) break;
      bool remaining = false;
      for (size_t i = 0; i < work.size(); ++i) {
        if (i == best || work[i][0] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), work[i][0].get_mpz_t(), work[best][0].get_mpz_t());
        work[i][0] -= q * work[best][0];
        work[i][1] -= q * work[best][1];
        remaining = remaining || work[i][0] != 0;
      }
      if (!remaining) {
        g1 = work[best];
        work[best] = {0, 0};
        break;
      }
    }
    for (auto& w : work) mpz_gcd(g2[1].get_mpz_t(), g2[1].get_mpz_t(), w[1].get_mpz_t());
    if (g1[0] == 0 || g2[1] == 0) fail("zariski_matrix", "degenerate rank-2 lattice");
  }

  const LogValue L1{mpq_class(g1[0]), mpq_class(g1[1])};
  const LogValue L2{mpq_class(g2[0]), mpq_class(g2[1])};
  std::vector<std::array<mpz_class, 2>> X(s);
  for (size_t i = 0; i < s; ++i) {
    const mpz_class a = V[i][0] / g1[0];
    const mpz_class b = (V[i][1] - a * g1[1]) / g2[1];
    if (V[i][0] != a * g1[0] || V[i][1] != a * g1[1] + b * g2[1])
      fail("zariski_matrix", "value outside its own lattice");
    X[i] = {a, b};
  }

  auto val_of = [&](const std::array<mpz_class, 2>& p) {
    return LogValue(mpq_class(p[0])) * L1 + LogValue(mpq_class(p[1])) * L2;
  };
  std::array<mpz_class, 2> P{1, 0}, Q{0, 1};
  if (val_of(P).sign() < 0) P[0] = -1;
  if (val_of(Q).sign() < 0) Q[1] = -1;

  IntMatrix beta(s, std::vector<mpz_class>(2));
  auto covered = [&]() {
    const mpz_class det = P[0] * Q[1] - P[1] * Q[0];
    for (size_t i = 0; i < s; ++i) {
      beta[i][0] = det * (X[i][0] * Q[1] - X[i][1] * Q[0]);
      beta[i][1] = det * (P[0] * X[i][1] - P[1] * X[i][0]);
      if (beta[i][0] < 0 || beta[i][1] < 0) return false;
    }
    return true;
  };
  for (int guard = 0; guard < 100000; ++guard) {
    if (covered()) return beta;
    const LogValue vp = val_of(P), vq = val_of(Q);
    if (vq < vp) {
      const mpz_class k = (vp / vq).floor();
      P[0] -= k * Q[0];
      P[1] -= k * Q[1];
    } else {
      const mpz_class k = (vq / vp).floor();
      Q[0] -= k * P[0];
      Q[1] -= k * P[1];
    }
  }
  fail("zariski_matrix", "cone walk did not converge");
}

}  // namespace detail

// Checks the three contract conditions exactly: A is unimodular with an
// integral inverse, the inverse is entrywise nonnegative, and A*c is
// positive in the first r slots and zero afterwards.
inline bool zariski_verify(const IntMatrix& A, const std::vector<LogValue>& c, long r) {
  const size_t s = c.size();
  if (A.size() != s) return false;
  for (const auto& row : A)
    if (row.size() != s) return false;
  std::vector<std::vector<mpq_class>> inv;
  if (!detail::try_inverse(A, inv)) return false;
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j)
      if (inv[i][j].get_den() != 1 || inv[i][j] < 0) return false;
  for (size_t i = 0; i < s; ++i) {
    LogValue acc(0);
    for (size_t j = 0; j < s; ++j) acc = acc + LogValue(mpq_class(A[i][j])) * c[j];
    if (static_cast<long>(i) < r ? acc.sign() <= 0 : acc.sign() != 0) return false;
  }
  return true;
}

// Unimodular A with nonnegative inverse sending the value vector c to
// (d_1..d_r, 0..0) with the leading entries positive.  The first r values
// must form a rational basis of the span of all of them.
inline IntMatrix zariski_matrix(const std::vector<LogValue>& c, long r) {
  const long s = static_cast<long>(c.size());
  if (s == 0) fail("zariski_matrix", "empty value vector");
  if (r < 1 || r > s) fail("zariski_matrix", "basis size out of range");
  for (const LogValue& v : c)
    if (v.sign() <= 0) fail("zariski_matrix", "values must be positive");
  const std::vector<LogValue> prefix(c.begin(), c.begin() + r);
  if (value_rank(prefix) != r || value_rank(c) != r)
    fail("zariski_matrix", "leading values do not form a basis of the span");

  IntMatrix A;
  if (r == s) {
    A = detail::identity_matrix(s);
  } else {
    const IntMatrix beta = detail::nonneg_coordinates(c, r);

    // Row-reduce beta to [I_r; 0] while tracking the inverse of the
    // transformation; its first r columns are then exactly beta.
    IntMatrix W = beta;
    IntMatrix B = detail::identity_matrix(s);
    auto row_op = [&](size_t i, size_t j, const mpz_class q) {  // q by value: callers pass entries of W
      for (long col = 0; col < r; ++col) W[i][col] -= q * W[j][col];
      for (long row = 0; row < s; ++row) B[row][j] += q * B[row][i];
    };
    for (long col = 0; col < r; ++col) {
      while (true) {
        size_t best = W.size();
        for (size_t i = col; i < W.size(); ++i)
          if (W[i][col] != 0 &&
              (best == W.size() ||
               mpz_cmpabs(W[i][col].get_mpz_t(), W[best][col].get_mpz_t()) < 0))
            best = i;
        if (best == W.size()) fail("zariski_matrix", "coordinate matrix lost rank");
        bool remaining = false;
        for (size_t i = col; i < W.size(); ++i) {
          if (i == best || W[i][col] == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), W[i][col].get_mpz_t(), W[best][col].get_mpz_t());
          row_op(i, best, q);
          remaining = remaining || W[i][col] != 0;
        }
        if (!remaining) {
          if (best != static_cast<size_t>(col)) {
            std::swap(W[best], W[col]);
            for (long row = 0; row < s; ++row) std::swap(B[row][best], B[row][col]);
          }
          break;
        }
      }
      if (W[col][col] < 0) {
        for (long j = 0; j < r; ++j) W[col][j] = -W[col][j];
        for (long row = 0; row < s; ++row) B[row][col] = -B[row][col];
      }
      if (W[col][col] != 1) fail("zariski_matrix", "coordinates do not generate the lattice");
      for (long i = 0; i < col; ++i)
        if (W[i][col] != 0) row_op(i, col, W[i][col]);
    }

    // Trailing inverse columns may be negative; every coordinate row is
    // nonzero, so shifting by the leading columns repairs the sign.
    for (long k = r; k < s; ++k) {
      mpz_class need = 0;
      for (long i = 0; i < s; ++i)
        if (B[i][k] < 0 && -B[i][k] > need) need = -B[i][k];
      if (need > 0)
        for (long j = 0; j < r; ++j)
          for (long i = 0; i < s; ++i) B[i][k] += need * B[i][j];
    }
    A = detail::unimodular_inverse(B);
  }
  if (!zariski_verify(A, c, r)) fail("zariski_matrix", "postcondition verification failed");
  return A;
}

}  // namespace padic
