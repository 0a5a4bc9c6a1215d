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

// Word-size prime field arithmetic, dense polynomials over Z/p, CRT and
// rational reconstruction. These are the building blocks of the multi-modular
// kernels (symmetric powers, span ranks, gcds, rational roots); every result
// obtained through them is re-certified over Q by the caller.

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <random>
#include <utility>
#include <vector>

#include "lode_atlas/rational.hpp"

namespace lode_atlas::modp {

using u64 = std::uint64_t;

struct Field {
  u64 p;

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1 % p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a == 0) throw DivisionByZero("inverse of 0 mod p");
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p),
                 nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<u64>(t);
  }
  u64 from_int(const Int& z) const {
    return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
  }
  // Returns false when the denominator vanishes mod p.
  bool from_rat(const Rat& r, u64& out) const {
    u64 d = from_int(r.get_den());
    if (d == 0) return false;
    out = mul(from_int(r.get_num()), inv(d));
    return true;
  }
  u64 from_long(long v) const {
    long m = v % static_cast<long>(p);
    return static_cast<u64>(m < 0 ? m + static_cast<long>(p) : m);
  }
};

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod = [n](u64 a, u64 b) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % n);
  };
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = 1, b = a % n, e = d;
    while (e) {
      if (e & 1) x = mulmod(x, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// The i-th prime below 2^31, in decreasing order. Products of two residues fit
// in 62 bits, so plain 64-bit arithmetic suffices.
inline u64 prime(std::size_t i) {
  static std::mutex mu;
  static std::vector<u64> cache;
  std::lock_guard<std::mutex> lock(mu);
  u64 cand = cache.empty() ? (1ULL << 31) - 1 : cache.back() - 2;
  while (cache.size() <= i) {
    while (!is_prime(cand)) cand -= 2;
    cache.push_back(cand);
    cand -= 2;
  }
  return cache[i];
}

// Dense polynomial over Z/p, ascending coefficients, no trailing zeros.
using Poly = std::vector<u64>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

inline Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

inline Poly scale(const Field& F, const Poly& a, u64 c) {
  if (c == 0) return {};
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return r;
}

inline Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  // Accumulate up to 4 products (< 2^62 each) before reducing.
  std::vector<u64> acc(a.size() + b.size() - 1, 0);
  const u64 p = F.p;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const u64 ai = a[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      u64 s = acc[i + j] + ai * b[j];
      acc[i + j] = s >= (1ULL << 63) ? s % p : s;
    }
  }
  for (auto& x : acc) x %= p;
  trim(acc);
  return acc;
}

inline u64 eval(const Field& F, const Poly& a, u64 x) {
  u64 r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

inline Poly derivative(const Field& F, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
  trim(r);
  return r;
}

// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(const Field& F, Poly a, const Poly& b) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero mod p");
  if (a.size() < b.size()) return {Poly{}, a};
  const u64 li = F.inv(b.back());
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    u64 c = F.mul(a[k + b.size() - 1], li);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = F.sub(a[k + j], F.mul(c, b[j]));
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly monic(const Field& F, const Poly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

inline Poly gcd(const Field& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

inline Poly powmod(const Field& F, Poly base, u64 e, const Poly& m) {
  Poly r{1};
  base = divmod(F, base, m).second;
  while (e) {
    if (e & 1) r = divmod(F, mul(F, r, base), m).second;
    base = divmod(F, mul(F, base, base), m).second;
    e >>= 1;
  }
  return r;
}

// Distinct roots in Z/p of a nonzero polynomial (equal-degree splitting).
inline std::vector<u64> roots(const Field& F, const Poly& f, std::uint64_t seed = 1) {
  std::vector<u64> out;
  if (f.size() <= 1) return out;
  Poly g = gcd(F, f, sub(F, powmod(F, Poly{0, 1}, F.p, f), Poly{0, 1}));
  if (g.size() <= 1) return out;
  std::mt19937_64 rng(seed);
  std::vector<Poly> work{g};
  while (!work.empty()) {
    Poly h = std::move(work.back());
    work.pop_back();
    if (h.size() <= 1) continue;
    if (h.size() == 2) {
      out.push_back(F.neg(F.mul(h[0], F.inv(h[1]))));
      continue;
    }
    if (F.p == 2) {
      for (u64 x = 0; x < 2; ++x)
        if (eval(F, h, x) == 0) out.push_back(x);
      continue;
    }
    for (;;) {
      u64 a = rng() % F.p;
      Poly s = sub(F, powmod(F, Poly{a, 1}, (F.p - 1) / 2, h), Poly{1});
      Poly d = gcd(F, h, s);
      if (d.size() > 1 && d.size() < h.size()) {
        work.push_back(divmod(F, h, d).first);
        work.push_back(std::move(d));
        break;
      }
    }
  }
  return out;
}

// Newton interpolation through (xs[i], ys[i]); xs distinct.
inline Poly interpolate(const Field& F, const std::vector<u64>& xs, const std::vector<u64>& ys) {
  const std::size_t n = xs.size();
  std::vector<u64> c(ys);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i)
      c[i] = F.mul(F.sub(c[i], c[i - 1]), F.inv(F.sub(xs[i], xs[i - j])));
  Poly r;
  for (std::size_t i = n; i-- > 0;) {
    // r = r * (x - xs[i]) + c[i]
    Poly nr(r.size() + 1, 0);
    for (std::size_t k = 0; k < r.size(); ++k) {
      nr[k + 1] = F.add(nr[k + 1], r[k]);
      nr[k] = F.sub(nr[k], F.mul(r[k], xs[i]));
    }
    nr[0] = F.add(nr[0], c[i]);
    trim(nr);
    r = std::move(nr);
  }
  return r;
}

// Rational function reconstruction: finds num/den ≡ a mod m with
// deg num + deg den < deg m, choosing the candidate after the largest quotient
// degree (maximal quotient rule). den is monic. Returns false on failure.
inline bool ratfun_reconstruct(const Field& F, const Poly& m, const Poly& a, Poly& num, Poly& den) {
  Poly r0 = m, r1 = a, t0{}, t1{1};
  int best_q = -1;
  Poly bn, bd;
  if (r1.empty()) {
    num = {};
    den = {1};
    return true;
  }
  // Candidate before any division: a / 1.
  int first_q = degree(m) - degree(a);
  best_q = first_q;
  bn = r1;
  bd = t1;
  while (!r1.empty()) {
    auto [q, r] = divmod(F, r0, r1);
    Poly t2 = sub(F, t0, mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
    if (r1.empty()) break;
    int qd = degree(r0) - degree(r1);
    if (qd > best_q) {
      best_q = qd;
      bn = r1;
      bd = t1;
    }
  }
  if (bd.empty()) return false;
  if (gcd(F, bd, m).size() > 1) return false;
  u64 li = F.inv(bd.back());
  num = scale(F, bn, li);
  den = scale(F, bd, li);
  trim(num);
  return true;
}

// Incremental Chinese remaindering of a single integer residue.
struct Crt {
  Int modulus = 1;
  Int value = 0;
  void add(u64 r, u64 p) {
    if (modulus == 1) {
      value = static_cast<unsigned long>(r);
      modulus = static_cast<unsigned long>(p);
      return;
    }
    Field F{p};
    u64 cur = F.from_int(value);
    u64 minv = F.inv(F.from_int(modulus));
    u64 k = F.mul(F.sub(r, cur), minv);
    value += modulus * static_cast<unsigned long>(k);
    modulus *= static_cast<unsigned long>(p);
  }
};

// Wang's rational reconstruction with balanced bounds sqrt(m/2).
inline bool rat_reconstruct(const Int& a, const Int& m, Rat& out) {
  Int bound;
  Int half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Int r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Int t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  Int g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = Rat(r1, t1);
  out.canonicalize();
  return true;
}

}  // namespace lode_atlas::modp
