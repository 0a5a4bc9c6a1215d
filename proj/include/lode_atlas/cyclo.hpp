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

// Exact arithmetic in cyclotomic fields Q(zeta_m). Elements are stored as the
// canonical residue modulo the m-th cyclotomic polynomial in the power basis
// 1, zeta, ..., zeta^(phi(m)-1).

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "lode_atlas/rational.hpp"

namespace lode_atlas {

inline int euler_phi(int m) {
  int r = m, n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

// Integer coefficients of Phi_m, ascending.
inline std::vector<long> cyclotomic_polynomial(int m) {
  if (m < 1) throw InvalidParameter("cyclotomic conductor must be positive");
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d) continue;
    std::vector<long> den = cyclotomic_polynomial(d);
    std::vector<long> q(num.size() - den.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
      long c = num[k + den.size() - 1];  // den is monic
      q[k] = c;
      for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    num = q;
  }
  return num;
}

namespace detail {

struct CycloContext {
  int m = 1;
  int phi = 1;
  // powers[k] = reduced coefficients of zeta^k, 0 <= k < max(m, 2 phi).
  std::vector<std::vector<long>> powers;
  std::vector<int> units;  // k in [1, m) coprime to m
};

inline const CycloContext& cyclo_context(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycloContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return *it->second;
  auto ctx = std::make_unique<CycloContext>();
  ctx->m = m;
  ctx->phi = euler_phi(m);
  const int phi = ctx->phi;
  std::vector<long> Phi = cyclotomic_polynomial(m);
  const int count = std::max(m, 2 * phi);
  ctx->powers.assign(count, std::vector<long>(phi, 0));
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  for (int k = 0; k < count; ++k) {
    ctx->powers[k] = cur;
    // multiply by zeta and reduce with the monic Phi_m
    long top = cur[phi - 1];
    for (int j = phi - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    for (int j = 0; j < phi; ++j) cur[j] -= top * Phi[j];
  }
  for (int k = 1; k < std::max(m, 2); ++k)
    if (std::gcd(k, m) == 1) ctx->units.push_back(k);
  if (m == 1) ctx->units = {1};
  const CycloContext& ref = *ctx;
  cache.emplace(m, std::move(ctx));
  return ref;
}

}  // namespace detail

class Cyclo {
 public:
  Cyclo() : m_(1), c_(1) {}
  Cyclo(const Rat& r) : m_(1), c_{r} {}  // NOLINT: rationals embed implicitly
  Cyclo(long v) : m_(1), c_{Rat(v)} {}   // NOLINT
  Cyclo(int m, std::vector<Rat> coeffs) : m_(m), c_(std::move(coeffs)) {
    if (m < 1) throw InvalidParameter("conductor must be positive");
    if (static_cast<int>(c_.size()) != euler_phi(m))
      throw ShapeMismatch("coefficient vector length must be phi(m)");
  }

  // zeta_m^k, any integer k.
  static Cyclo zeta(int m, long k = 1) {
    const auto& ctx = detail::cyclo_context(m);
    long kk = ((k % m) + m) % m;
    std::vector<Rat> c(ctx.phi);
    for (int j = 0; j < ctx.phi; ++j) c[j] = ctx.powers[kk][j];
    return Cyclo(m, std::move(c), raw_tag{});
  }
  // r embedded into Q(zeta_m).
  static Cyclo rational(const Rat& r, int m) {
    std::vector<Rat> c(euler_phi(m));
    c[0] = r;
    return Cyclo(m, std::move(c), raw_tag{});
  }

  int conductor() const { return m_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (sgn(x) != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return false;
    return true;
  }
  const Rat& rational_part() const { return c_[0]; }

  Cyclo embed(int m2) const {
    if (m2 < 1 || m2 % m_ != 0)
      throw EmbedUnsupported("conductor " + std::to_string(m_) + " does not divide " +
                             std::to_string(m2));
    if (m2 == m_) return *this;
    const auto& ctx = detail::cyclo_context(m2);
    const int step = m2 / m_;
    std::vector<Rat> out(ctx.phi);
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (sgn(c_[j]) == 0) continue;
      const auto& pw = ctx.powers[(j * step) % m2];
      for (int i = 0; i < ctx.phi; ++i)
        if (pw[i]) out[i] += c_[j] * pw[i];
    }
    return Cyclo(m2, std::move(out), raw_tag{});
  }

  Cyclo operator-() const {
    Cyclo r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Cyclo& operator+=(const Cyclo& o) {
    if (o.m_ == m_) {
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    } else if (o.m_ == 1) {
      c_[0] += o.c_[0];
    } else if (m_ == 1) {
      Rat keep = c_[0];
      *this = o;
      c_[0] += keep;
    } else {
      throw mismatch(o);
    }
    return *this;
  }
  Cyclo& operator-=(const Cyclo& o) { return *this += -o; }
  Cyclo& operator*=(const Cyclo& o) {
    *this = *this * o;
    return *this;
  }

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) {
    if (b.m_ == a.m_) {
      for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
      return a;
    }
    return a += -b;
  }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (b.m_ == 1) return a.scaled(b.c_[0]);
    if (a.m_ == 1) return b.scaled(a.c_[0]);
    if (a.m_ != b.m_) throw a.mismatch(b);
    const auto& ctx = detail::cyclo_context(a.m_);
    const int phi = ctx.phi;
    std::vector<Rat> raw(2 * phi - 1);
    Rat tmp;
    for (int i = 0; i < phi; ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (int j = 0; j < phi; ++j) {
        if (sgn(b.c_[j]) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
        raw[i + j] += tmp;
      }
    }
    std::vector<Rat> out(raw.begin(), raw.begin() + phi);
    for (int k = phi; k < 2 * phi - 1; ++k) {
      if (sgn(raw[k]) == 0) continue;
      const auto& pw = ctx.powers[k];
      for (int i = 0; i < phi; ++i)
        if (pw[i]) out[i] += raw[k] * pw[i];
    }
    return Cyclo(a.m_, std::move(out), raw_tag{});
  }

  Cyclo scaled(const Rat& r) const {
    Cyclo out(*this);
    for (auto& x : out.c_) x *= r;
    return out;
  }

  // Image under zeta -> zeta^k (k coprime to the conductor).
  Cyclo galois(int k) const {
    const auto& ctx = detail::cyclo_context(m_);
    std::vector<Rat> out(ctx.phi);
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (sgn(c_[j]) == 0) continue;
      long e = (static_cast<long>(j) * k) % m_;
      if (e < 0) e += m_;
      const auto& pw = ctx.powers[e];
      for (int i = 0; i < ctx.phi; ++i)
        if (pw[i]) out[i] += c_[j] * pw[i];
    }
    return Cyclo(m_, std::move(out), raw_tag{});
  }

  // Multiplicative inverse as the product of the non-trivial conjugates over
  // the (rational) norm.
  Cyclo inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_" + std::to_string(m_) + ")");
    if (m_ == 1) return Cyclo(Rat(1) / c_[0]);
    const auto& ctx = detail::cyclo_context(m_);
    Cyclo prod = rational(Rat(1), m_);
    for (int k : ctx.units)
      if (k != 1) prod = prod * galois(k);
    Cyclo norm = prod * *this;
    return prod.scaled(Rat(1) / norm.c_[0]);
  }

  Cyclo pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Cyclo r = rational(Rat(1), m_), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inv(); }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    int l = std::lcm(a.m_, b.m_);
    return a.embed(l).c_ == b.embed(l).c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(m_);
    for (const auto& x : c_) h = h * 1000003u ^ hash_rat(x);
    return h;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      std::string term = to_string(c_[i]);
      if (i > 0) term = "(" + term + ")*z" + std::to_string(m_) + "^" + std::to_string(i);
      s += s.empty() ? term : " + " + term;
    }
    return s.empty() ? "0" : s;
  }
  friend std::ostream& operator<<(std::ostream& os, const Cyclo& x) { return os << x.str(); }

 private:
  struct raw_tag {};
  Cyclo(int m, std::vector<Rat> coeffs, raw_tag) : m_(m), c_(std::move(coeffs)) {}
  ConductorMismatch mismatch(const Cyclo& o) const {
    return ConductorMismatch("conductors " + std::to_string(m_) + " and " +
                             std::to_string(o.m_));
  }

  int m_;
  std::vector<Rat> c_;
};

inline Cyclo lift(const Cyclo& x, int m) { return x.conductor() == m ? x : x.embed(m); }

// The named constants of the generator catalog, each built from roots of unity.
namespace constants {

// sqrt(5) = t - s with xi = zeta_5, s = xi^3 + xi^2, t = xi^4 + xi.
inline Cyclo sqrt5(int m = 5) {
  int k = m / 5;
  Cyclo xi = Cyclo::zeta(m, k);
  Cyclo s = xi.pow(3) + xi.pow(2), t = xi.pow(4) + xi;
  return t - s;
}
// beta^6 + beta^5 + beta^3 - beta^4 - beta^2 - beta, whose square is -7.
inline Cyclo sqrt_m7(int m = 7) {
  int k = m / 7;
  Cyclo b = Cyclo::zeta(m, k);
  return b.pow(6) + b.pow(5) + b.pow(3) - b.pow(4) - b.pow(2) - b;
}
// omega = -1 - eps^3 with eps = zeta_9, i.e. zeta_3^2.
inline Cyclo omega(int m = 3) { return Cyclo::zeta(m, 2 * (m / 3)); }
// omega - omega^2, whose square is -3.
inline Cyclo sqrt_m3(int m = 3) {
  Cyclo w = omega(m);
  return w - w * w;
}
inline Cyclo sqrt_m15(int m = 15) { return sqrt5(m) * sqrt_m3(m); }
// sqrt(3) = -i * sqrt(-3), realized in Q(zeta_36) (i = zeta_36^9).
inline Cyclo sqrt3() {
  Cyclo i = Cyclo::zeta(36, 9);
  return -(i * sqrt_m3(36));
}

}  // namespace constants

}  // namespace lode_atlas

template <>
struct std::hash<lode_atlas::Cyclo> {
  std::size_t operator()(const lode_atlas::Cyclo& x) const { return x.hash(); }
};
