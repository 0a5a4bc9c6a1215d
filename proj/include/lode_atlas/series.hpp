// Copyright 2026 The lode-atlas Authors
//
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

// Truncated power series at a rational base point, series solutions at
// ordinary points, hypergeometric series, operator residuals and an exact
// span-membership test.

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lode_atlas/errors.hpp"
#include "lode_atlas/linode.hpp"
#include "lode_atlas/modular.hpp"

namespace lode_atlas {

// Coefficients c_0..c_N of sum c_k (t - base)^k. N is the truncation order;
// every operation keeps only the window on which its result is exact.
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(Rat base, std::vector<Rat> coeffs) : base_(std::move(base)), c_(std::move(coeffs)) {}
  static TruncSeries constant(const Rat& base, const Rat& c, int order) {
    std::vector<Rat> v(order + 1, Rat(0));
    v[0] = c;
    return TruncSeries(base, std::move(v));
  }

  const Rat& base() const { return base_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& coeff(int k) const { return c_.at(k); }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return sgn(x) == 0; });
  }

  TruncSeries truncated(int order) const {
    if (order > this->order()) throw ShapeMismatch("cannot extend a truncated series");
    return TruncSeries(base_, std::vector<Rat>(c_.begin(), c_.begin() + order + 1));
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    same_base(a, b);
    const int n = std::min(a.order(), b.order());
    std::vector<Rat> r(n + 1);
    for (int k = 0; k <= n; ++k) r[k] = a.c_[k] + b.c_[k];
    return TruncSeries(a.base_, std::move(r));
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + b.scaled(Rat(-1)); }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    same_base(a, b);
    const int n = std::min(a.order(), b.order());
    std::vector<Rat> r(n + 1, Rat(0));
    for (int i = 0; i <= n; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (int j = 0; i + j <= n; ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return TruncSeries(a.base_, std::move(r));
  }
  TruncSeries scaled(const Rat& s) const {
    std::vector<Rat> r(c_);
    for (auto& x : r) x *= s;
    return TruncSeries(base_, std::move(r));
  }
  TruncSeries derivative() const {
    if (c_.empty()) return *this;
    std::vector<Rat> r(c_.size() > 1 ? c_.size() - 1 : 0);
    for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * static_cast<long>(k);
    return TruncSeries(base_, std::move(r));
  }
  // s^alpha for a series with constant term 1.
  TruncSeries pow(const Rat& alpha) const {
    if (c_.empty() || c_[0] != 1) throw InvalidParameter("series power needs constant term 1");
    const int n = order();
    std::vector<Rat> r(n + 1, Rat(0));
    r[0] = 1;
    for (int k = 1; k <= n; ++k) {
      Rat acc = 0;
      for (int j = 1; j <= k; ++j) acc += (alpha * j - (k - j)) * c_[j] * r[k - j];
      r[k] = acc / k;
    }
    return TruncSeries(base_, std::move(r));
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.base_ == b.base_ && a.c_ == b.c_; }

 private:
  static void same_base(const TruncSeries& a, const TruncSeries& b) {
    if (a.base_ != b.base_) throw ShapeMismatch("series at different base points");
  }
  Rat base_ = 0;
  std::vector<Rat> c_;
};

// Taylor expansion of a polynomial or rational function at base.
inline TruncSeries expand(const QPoly& p, const Rat& base, int order) {
  QPoly s = p.shift(base);
  std::vector<Rat> c(order + 1, Rat(0));
  for (int k = 0; k <= std::min(order, s.degree()); ++k) c[k] = s.coeff(k);
  return TruncSeries(base, std::move(c));
}

inline TruncSeries expand(const RatFun& f, const Rat& base, int order) {
  QPoly num = f.num().shift(base), den = f.den().shift(base);
  if (den.is_zero() || sgn(den.coeff(0)) == 0)
    throw SingularExpansionPoint("pole at t = " + base.get_str());
  std::vector<Rat> c(order + 1, Rat(0));
  const Rat inv0 = 1 / den.coeff(0);
  for (int k = 0; k <= order; ++k) {
    Rat acc = k <= num.degree() ? num.coeff(k) : Rat(0);
    for (int j = 1; j <= std::min(k, den.degree()); ++j) acc -= den.coeff(j) * c[k - j];
    c[k] = acc * inv0;
  }
  return TruncSeries(base, std::move(c));
}

namespace detail {

// The cleared operator at base + s, scaled to integer coefficients.
inline std::vector<std::vector<Int>> shifted_integer_operator(const LinODE& L, const Rat& base) {
  std::vector<QPoly> P = L.cleared();
  Int l = 1;
  for (auto& p : P) {
    p = p.shift(base);
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<std::vector<Int>> out;
  for (const auto& p : P) {
    std::vector<Int> z;
    for (const auto& c : p.coeffs()) z.push_back(Rat(c * l).get_num());
    out.push_back(std::move(z));
  }
  return out;
}

// Solutions at an ordinary point in scaled exponential form: the series with
// coefficients e_k / (k! B^k), where B is the leading cleared coefficient at
// the base. The recurrence for e_k is then integral, and so are products.
struct EgfBasis {
  Int B;
  std::vector<std::vector<Int>> e;  // one per solution
};

inline EgfBasis egf_solutions(const LinODE& L, const Rat& base, int order) {
  const int n = L.order();
  auto P = shifted_integer_operator(L, base);
  if (P[n].empty() || sgn(P[n][0]) == 0)
    throw SingularExpansionPoint("t = " + base.get_str() + " is a singular point");
  EgfBasis out;
  out.B = P[n][0];
  int maxdeg = 0;
  for (const auto& p : P) maxdeg = std::max(maxdeg, static_cast<int>(p.size()) - 1);
  std::vector<Int> Bpow{1};
  for (int k = 1; k <= n + 64; ++k) Bpow.push_back(Bpow.back() * out.B);
  auto bpow = [&](int e) -> const Int& {
    while (static_cast<int>(Bpow.size()) <= e) Bpow.push_back(Bpow.back() * out.B);
    return Bpow[e];
  };
  for (int j = 0; j < n; ++j) {
    std::vector<Int> e(order + 1, Int(0));
    if (j <= order) e[j] = bpow(j);
    for (int m = 0; m + n <= order; ++m) {
      Int acc = 0, falling = 1;  // falling = m!/(m-jj)!
      for (int jj = 0; jj <= std::min(m, maxdeg); ++jj) {
        if (jj > 0) falling *= (m - jj + 1);
        for (int i = 0; i <= n; ++i) {
          if (i == n && jj == 0) continue;
          if (jj >= static_cast<int>(P[i].size()) || sgn(P[i][jj]) == 0) continue;
          const Int& ev = e[m - jj + i];
          if (sgn(ev) == 0) continue;
          acc += P[i][jj] * falling * bpow(n - 1 - i + jj) * ev;
        }
      }
      e[m + n] = -acc;
    }
    out.e.push_back(std::move(e));
  }
  return out;
}

inline TruncSeries egf_to_series(const Rat& base, const Int& B, const std::vector<Int>& e) {
  std::vector<Rat> c(e.size());
  Int scale = 1;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k > 0) scale *= B * static_cast<unsigned long>(k);
    c[k] = Rat(e[k], scale);
    c[k].canonicalize();
  }
  return TruncSeries(base, std::move(c));
}

}  // namespace detail

// Fundamental system at an ordinary point t0 with unit triangular initial
// data: the j-th series has (d/dt)^i y_j(t0) = [i = j].
inline std::vector<TruncSeries> series_solutions(const LinODE& L, const Rat& t0, int order) {
  if (order < 0) throw InvalidParameter("negative truncation order");
  auto egf = detail::egf_solutions(L, t0, order);
  std::vector<TruncSeries> out;
  for (const auto& e : egf.e) out.push_back(detail::egf_to_series(t0, egf.B, e));
  return out;
}

// Exponent vectors of degree d in n variables, the first variable's
// exponent descending (so y_1^d comes first).
inline std::vector<std::vector<int>> degree_exponents(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  if (n > 0) rec(rec, 0, d);
  return out;
}

namespace detail {

// A series written as a_k / (g A^k) with integers a_k.
struct ScaledSeries {
  Int g, A;
  std::vector<Int> a;
};

// Finds g and A from the denominators of the given series (all at one base)
// by fitting, for each prime, the valuation line gamma + beta k. Only primes
// of the supplied list are tried; returns false if a denominator has another
// prime factor.
inline bool common_scaling(const std::vector<TruncSeries>& ss, const std::vector<Int>& primes, Int& g, Int& A) {
  const int N = ss.empty() ? -1 : ss[0].order();
  std::vector<std::vector<unsigned long>> val(primes.size(), std::vector<unsigned long>(N + 1, 0));
  for (int k = 0; k <= N; ++k) {
    Int den = 1;
    for (const auto& s : ss) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), s.coeff(k).get_den_mpz_t());
    for (std::size_t i = 0; i < primes.size(); ++i)
      val[i][k] = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), primes[i].get_mpz_t());
    if (den != 1) return false;
  }
  g = 1;
  A = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const unsigned long beta = N > 0 ? (val[i][N] + N - 1) / N : 0;
    long gamma = 0;
    for (int k = 0; k <= N; ++k) gamma = std::max(gamma, static_cast<long>(val[i][k]) - static_cast<long>(beta) * k);
    Int q;
    mpz_pow_ui(q.get_mpz_t(), primes[i].get_mpz_t(), beta);
    A *= q;
    mpz_pow_ui(q.get_mpz_t(), primes[i].get_mpz_t(), static_cast<unsigned long>(gamma));
    g *= q;
  }
  return true;
}

inline ScaledSeries to_scaled(const TruncSeries& s, const Int& g, const Int& A) {
  ScaledSeries out{g, A, {}};
  Int pw = g;
  for (int k = 0; k <= s.order(); ++k) {
    const Rat& c = s.coeff(k);
    out.a.push_back(c.get_num() * (pw / c.get_den()));
    pw *= A;
  }
  return out;
}

inline TruncSeries from_scaled(const Rat& base, const ScaledSeries& s) {
  std::vector<Rat> c(s.a.size());
  Int pw = s.g;
  for (std::size_t k = 0; k < s.a.size(); ++k) {
    c[k] = Rat(s.a[k], pw);
    c[k].canonicalize();
    pw *= s.A;
  }
  return TruncSeries(base, std::move(c));
}

// Packs |a_k| of one sign into slots of w bits (w a multiple of 64).
inline Int kronecker_pack(const std::vector<Int>& a, std::size_t w, int sign) {
  const std::size_t words = w / 64;
  std::vector<std::uint64_t> buf(a.size() * words, 0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (sgn(a[k]) != sign) continue;
    std::size_t cnt = 0;
    mpz_export(buf.data() + k * words, &cnt, -1, 8, 0, 0, a[k].get_mpz_t());
  }
  Int r;
  mpz_import(r.get_mpz_t(), buf.size(), -1, 8, 0, 0, buf.data());
  return r;
}

inline std::vector<Int> kronecker_unpack(const Int& z, std::size_t w, std::size_t n) {
  const std::size_t words = w / 64;
  std::size_t cnt = 0;
  std::vector<std::uint64_t> buf((mpz_sizeinbase(z.get_mpz_t(), 2) + 63) / 64 + 1, 0);
  mpz_export(buf.data(), &cnt, -1, 8, 0, 0, z.get_mpz_t());
  std::vector<Int> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k * words >= cnt) break;
    std::size_t len = std::min(words, cnt - k * words);
    mpz_import(out[k].get_mpz_t(), len, -1, 8, 0, 0, buf.data() + k * words);
  }
  return out;
}

// Truncated product of integer sequences by Kronecker substitution.
inline std::vector<Int> kronecker_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t ba = 1, bb = 1;
  for (std::size_t k = 0; k < n; ++k) {
    ba = std::max(ba, mpz_sizeinbase(a[k].get_mpz_t(), 2));
    bb = std::max(bb, mpz_sizeinbase(b[k].get_mpz_t(), 2));
  }
  std::size_t w = ba + bb + 2;
  for (std::size_t x = n; x > 0; x >>= 1) ++w;
  w = (w + 63) / 64 * 64;
  std::vector<Int> at(a.begin(), a.begin() + n), bt(b.begin(), b.begin() + n);
  const Int x = kronecker_pack(at, w, 1) - kronecker_pack(at, w, -1);
  const Int y = kronecker_pack(bt, w, 1) - kronecker_pack(bt, w, -1);
  // Keep the low n slots and shift every slot by 2^(w-1) so that all slots
  // are non-negative; no carries cross slots since |c_k| < 2^(w-1).
  Int z = x * y;
  mpz_fdiv_r_2exp(z.get_mpz_t(), z.get_mpz_t(), w * n);
  Int half;
  mpz_ui_pow_ui(half.get_mpz_t(), 2, w - 1);
  z += kronecker_pack(std::vector<Int>(n, half), w, 1);
  mpz_fdiv_r_2exp(z.get_mpz_t(), z.get_mpz_t(), w * n);
  auto out = kronecker_unpack(z, w, n);
  for (auto& c : out) c -= half;
  return out;
}

}  // namespace detail

// All degree-d products of the series solutions of L at t0, in the order of
// degree_exponents. The solutions are rescaled to integer sequences, so each
// product is a single integer multiplication.
namespace detail {

// Degree-d products as integer sequences over the common denominators
// g^d A^k, in the order of degree_exponents.
inline std::vector<ScaledSeries> scaled_monomials(const LinODE& L, const Rat& t0, int order, int d) {
  const int n = L.order();
  std::vector<TruncSeries> sol = series_solutions(L, t0, order);
  // Denominators come from the leading coefficient at t0 and from factorials.
  std::vector<Int> primes;
  {
    Int B = abs(egf_solutions(L, t0, 0).B);
    const unsigned long small = static_cast<unsigned long>(std::max(order, n) + 1);
    for (unsigned long q = 2; q <= small || (q * q <= B && q <= 1000000); ++q) {
      bool prime = true;
      for (unsigned long r = 2; r * r <= q && prime; ++r) prime = q % r != 0;
      if (!prime) continue;
      const bool divides = mpz_divisible_ui_p(B.get_mpz_t(), q);
      if (q <= small || divides) primes.push_back(Int(q));
      while (mpz_divisible_ui_p(B.get_mpz_t(), q)) B /= q;
    }
    if (B > 1) primes.push_back(B);
  }
  Int g, A;
  if (!common_scaling(sol, primes, g, A)) throw CertificationFailure("unexpected denominator in series solutions");
  std::vector<ScaledSeries> base;
  for (const auto& s : sol) base.push_back(to_scaled(s, g, A));
  ScaledSeries one{Int(1), A, std::vector<Int>(order + 1, Int(0))};
  one.a[0] = 1;
  std::map<std::vector<int>, ScaledSeries> level;
  level.emplace(std::vector<int>(n, 0), one);
  for (int deg = 1; deg <= d; ++deg) {
    std::map<std::vector<int>, ScaledSeries> next;
    for (const auto& ex : degree_exponents(n, deg)) {
      int j = 0;
      while (ex[j] == 0) ++j;
      auto rest = ex;
      --rest[j];
      const auto& r = level.at(rest);
      next.emplace(ex, ScaledSeries{r.g * g, A, kronecker_mul(r.a, base[j].a)});
    }
    level = std::move(next);
  }
  std::vector<ScaledSeries> out;
  for (const auto& ex : degree_exponents(n, d)) out.push_back(std::move(level.at(ex)));
  return out;
}

}  // namespace detail

// All degree-d products of the series solutions of L at t0, in the order of
// degree_exponents.
inline std::vector<TruncSeries> solution_monomials(const LinODE& L, const Rat& t0, int order, int d) {
  std::vector<TruncSeries> out;
  for (const auto& s : detail::scaled_monomials(L, t0, order, d)) out.push_back(detail::from_scaled(t0, s));
  return out;
}

// Pochhammer-ratio series sum_k prod (a_i)_k / (prod (b_j)_k k!) t^k at 0.
inline TruncSeries hypergeometric_series(const std::vector<Rat>& a, const std::vector<Rat>& b, int order) {
  for (const auto& x : b)
    if (x.get_den() == 1 && sgn(x) <= 0) throw InvalidParameter("lower parameter " + x.get_str() + " is a non-positive integer");
  std::vector<Rat> c(order + 1);
  c[0] = 1;
  for (int k = 0; k < order; ++k) {
    Rat r = c[k];
    for (const auto& x : a) r *= x + k;
    for (const auto& x : b) r /= x + k;
    c[k + 1] = r / (k + 1);
  }
  return TruncSeries(Rat(0), std::move(c));
}

inline TruncSeries hyp3f2_series(const Rat& a1, const Rat& a2, const Rat& a3, const Rat& b1, const Rat& b2, int order) {
  return hypergeometric_series({a1, a2, a3}, {b1, b2}, order);
}

// The cleared operator P_n y^(n) + ... + P_0 y applied to a series; exact up
// to order N - n.
inline TruncSeries residual(const LinODE& L, const TruncSeries& y) {
  const int n = L.order();
  if (y.order() < n) throw InconclusiveTruncation("series shorter than the operator order");
  std::vector<QPoly> P = L.cleared();
  const int out_order = y.order() - n;
  std::vector<Rat> r(out_order + 1, Rat(0));
  TruncSeries dy = y;
  for (int i = 0; i <= n; ++i) {
    QPoly p = P[i].shift(y.base());
    for (int j = 0; j <= p.degree(); ++j) {
      if (sgn(p.coeff(j)) == 0) continue;
      for (int k = 0; k + j <= out_order; ++k) r[k + j] += p.coeff(j) * dy.coeff(k);
    }
    if (i < n) dy = dy.derivative();
  }
  return TruncSeries(y.base(), std::move(r));
}

struct SpanResult {
  bool member = false;
  int rank = 0;                   // rank of the products on the window
  std::vector<Rat> combination;   // when member: candidate = sum c_j products_j
  int primes = 0;
};

namespace detail {

// Row-scaled integer matrix of the series window; scaling rows keeps every
// column relation.
inline std::vector<std::vector<Int>> integer_window(const std::vector<const TruncSeries*>& cols, int rows) {
  std::vector<std::vector<Int>> A(rows, std::vector<Int>(cols.size()));
  for (int k = 0; k < rows; ++k) {
    Int l = 1;
    for (const auto* s : cols) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s->coeff(k).get_den_mpz_t());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const Rat& c = cols[j]->coeff(k);
      A[k][j] = c.get_num() * (l / c.get_den());
    }
  }
  return A;
}

// Reduced row echelon form modulo p; returns the pivot columns and fills rref
// with one row per pivot.
inline std::vector<int> rref_mod(const modp::Field& F, const std::vector<std::vector<Int>>& A,
                                 std::vector<std::vector<modp::u64>>& rref) {
  const std::size_t R = A.size(), C = R ? A[0].size() : 0;
  std::vector<std::vector<modp::u64>> a(R, std::vector<modp::u64>(C));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) a[i][j] = mpz_fdiv_ui(A[i][j].get_mpz_t(), F.p);
  std::vector<int> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < C && row < R; ++c) {
    std::size_t p = row;
    while (p < R && a[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(a[p], a[row]);
    modp::u64 inv = F.inv(a[row][c]);
    for (std::size_t j = c; j < C; ++j) a[row][j] = F.mul(a[row][j], inv);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || a[i][c] == 0) continue;
      modp::u64 f = a[i][c];
      for (std::size_t j = c; j < C; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[row][j]));
    }
    piv.push_back(static_cast<int>(c));
    ++row;
  }
  a.resize(row);
  rref = std::move(a);
  return piv;
}

inline bool kills(const std::vector<std::vector<Int>>& A, const std::vector<Rat>& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Int> w;
  for (const auto& x : v) w.push_back(x.get_num() * (l / x.get_den()));
  for (const auto& row : A) {
    Int s = 0;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (sgn(w[j]) != 0) mpz_addmul(s.get_mpz_t(), row[j].get_mpz_t(), w[j].get_mpz_t());
    if (sgn(s) != 0) return false;
  }
  return true;
}

}  // namespace detail

// Whether the candidate is a Q-linear combination of the products on the
// common window. The echelon data is found modulo primes and reconstructed;
// the answer is then certified exactly: a combination is checked by
// substitution, and a negative answer by exhibiting a kernel basis of the
// whole matrix whose size matches the modular rank.
namespace detail {

// Core of the span test on an integer matrix whose last column is the
// candidate.
inline SpanResult span_core(const std::vector<std::vector<Int>>& A) {
  const int m = A.empty() ? 0 : static_cast<int>(A[0].size()) - 1;
  SpanResult out;
  std::vector<int> best_piv;
  std::vector<modp::Crt> crt;
  std::vector<Rat> cand;
  bool have = false;
  for (std::size_t pi = 0; pi < 2000; ++pi) {
    modp::Field F{modp::prime(pi)};
    std::vector<std::vector<modp::u64>> rref;
    auto piv = detail::rref_mod(F, A, rref);
    ++out.primes;
    if (!best_piv.empty()) {
      if (piv.size() < best_piv.size() || (piv.size() == best_piv.size() && piv > best_piv)) continue;
      if (piv != best_piv) {
        crt.clear();
        have = false;
      }
    }
    best_piv = piv;
    const bool member = piv.empty() || piv.back() != m;
    // Flattened unknowns: the combination, or the kernel basis.
    std::vector<int> free_cols;
    for (int j = 0, q = 0; j <= m; ++j) {
      if (q < static_cast<int>(piv.size()) && piv[q] == j) ++q;
      else if (j < m) free_cols.push_back(j);
    }
    std::vector<modp::u64> flat;
    if (member) {
      for (std::size_t r = 0; r < piv.size(); ++r) flat.push_back(rref[r][m]);
    } else {
      for (int f : free_cols)
        for (std::size_t r = 0; r < piv.size(); ++r) flat.push_back(F.neg(rref[r][f]));
    }
    auto assemble = [&](const std::vector<Rat>& vals) {
      std::vector<std::vector<Rat>> vecs;
      if (member) {
        std::vector<Rat> v(m + 1, Rat(0));
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = vals[r];
        v[m] = -1;
        vecs.push_back(std::move(v));
      } else {
        std::size_t pos = 0;
        for (int f : free_cols) {
          std::vector<Rat> v(m + 1, Rat(0));
          v[f] = 1;
          for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = vals[pos++];
          vecs.push_back(std::move(v));
        }
      }
      return vecs;
    };
    if (have) {
      bool agree = true;
      for (std::size_t k = 0; k < flat.size() && agree; ++k) {
        modp::u64 v;
        agree = F.from_rat(cand[k], v) && v == flat[k];
      }
      if (agree) {
        auto vecs = assemble(cand);
        bool ok = std::all_of(vecs.begin(), vecs.end(), [&](const auto& v) { return detail::kills(A, v); });
        if (ok) {
          out.member = member;
          out.rank = static_cast<int>(piv.size()) - (member ? 0 : 1);
          if (member) out.combination.assign(vecs[0].begin(), vecs[0].begin() + m);
          return out;
        }
      }
    }
    if (crt.empty()) crt.assign(flat.size(), modp::Crt{});
    for (std::size_t k = 0; k < flat.size(); ++k) crt[k].add(flat[k], F.p);
    cand.assign(flat.size(), Rat(0));
    have = true;
    for (std::size_t k = 0; k < flat.size() && have; ++k)
      have = modp::rat_reconstruct(crt[k].value, crt[k].modulus, cand[k]);
  }
  throw CertificationFailure("span membership did not stabilize");
}

}  // namespace detail

// Whether the candidate is a Q-linear combination of the products on the
// common window. The echelon data is found modulo primes and reconstructed;
// the answer is then certified exactly: a combination is checked by
// substitution, and a negative answer by exhibiting a kernel basis of the
// whole matrix whose size matches the modular rank.
inline SpanResult span_membership(const std::vector<TruncSeries>& products, const TruncSeries& candidate) {
  const int m = static_cast<int>(products.size());
  const int N = candidate.order();
  for (const auto& s : products) {
    if (s.base() != candidate.base()) throw ShapeMismatch("series at different base points");
    if (s.order() != N) throw ShapeMismatch("series of different truncation orders");
  }
  if (N < 2 * m) throw InconclusiveTruncation("truncation order " + std::to_string(N) + " below twice the " +
                                              std::to_string(m) + " products");
  std::vector<const TruncSeries*> cols;
  for (const auto& s : products) cols.push_back(&s);
  cols.push_back(&candidate);
  return detail::span_core(detail::integer_window(cols, N + 1));
}

// The same test against all degree-d products of the solutions of L at the
// candidate's base point, without materializing rational products.
inline SpanResult monomial_span_membership(const LinODE& L, int d, const TruncSeries& candidate) {
  const int N = candidate.order();
  auto mons = detail::scaled_monomials(L, candidate.base(), N, d);
  const int m = static_cast<int>(mons.size());
  if (N < 2 * m) throw InconclusiveTruncation("truncation order " + std::to_string(N) + " below twice the " +
                                              std::to_string(m) + " products");
  // Row k of the products has denominator g^d A^k; scale it and the
  // candidate's entry to integers.
  std::vector<std::vector<Int>> A(N + 1, std::vector<Int>(m + 1));
  Int pw = mons[0].g;
  for (int k = 0; k <= N; ++k) {
    const Rat c = candidate.coeff(k) * pw;
    const Int den = c.get_den();
    for (int j = 0; j < m; ++j) A[k][j] = mons[j].a[k] * den;
    A[k][m] = c.get_num();
    pw *= mons[0].A;
  }
  return detail::span_core(A);
}

}  // namespace lode_atlas
