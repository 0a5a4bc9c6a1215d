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

// Univariate polynomials over Q in ascending coefficient order, with a
// multi-modular gcd, square-free decomposition, rational roots and
// resultants.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lode_atlas/errors.hpp"
#include "lode_atlas/modular.hpp"
#include "lode_atlas/rational.hpp"

namespace lode_atlas {

class QPoly {
 public:
  QPoly() = default;
  QPoly(const Rat& c) : c_{c} { trim(); }  // NOLINT(google-explicit-constructor)
  QPoly(long c) : QPoly(Rat(c)) {}         // NOLINT(google-explicit-constructor)
  explicit QPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

  static QPoly t() { return QPoly(std::vector<Rat>{Rat(0), Rat(1)}); }
  static QPoly monomial(int e, const Rat& c = Rat(1)) {
    std::vector<Rat> v(e + 1);
    v[e] = c;
    return QPoly(std::move(v));
  }
  // (t - r)
  static QPoly linear(const Rat& r) { return QPoly(std::vector<Rat>{-r, Rat(1)}); }

  const std::vector<Rat>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rat(0); }
  const Rat& lead() const {
    if (c_.empty()) throw DivisionByZero("leading coefficient of zero polynomial");
    return c_.back();
  }

  QPoly operator-() const {
    QPoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  QPoly& operator+=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  QPoly& operator-=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    Rat tmp;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (sgn(b.c_[j]) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
        r[i + j] += tmp;
      }
    }
    return QPoly(std::move(r));
  }
  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

  QPoly scaled(const Rat& s) const {
    if (sgn(s) == 0) return {};
    QPoly r(*this);
    for (auto& x : r.c_) x *= s;
    return r;
  }
  QPoly pow(unsigned e) const {
    QPoly r(1), b(*this);
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }
  QPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return QPoly(std::move(r));
  }
  Rat eval(const Rat& x) const {
    Rat r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }
  QPoly monic() const { return is_zero() ? *this : scaled(Rat(1) / lead()); }
  // p(q(t))
  QPoly compose(const QPoly& q) const {
    QPoly r;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * q + QPoly(c_[i]);
    return r;
  }
  // p(t + a)
  QPoly shift(const Rat& a) const { return compose(QPoly(std::vector<Rat>{a, Rat(1)})); }
  // t^deg p(1/t), for a given nominal degree
  QPoly reversed(int deg) const {
    std::vector<Rat> r(deg + 1);
    for (int i = 0; i <= degree(); ++i) r[deg - i] = c_[i];
    return QPoly(std::move(r));
  }

  friend std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.degree() < b.degree()) return {QPoly(), a};
    std::vector<Rat> r = a.c_;
    std::vector<Rat> q(a.c_.size() - b.c_.size() + 1);
    const Rat li = Rat(1) / b.lead();
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      Rat f = r[k + db] * li;
      q[k] = f;
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) r[k + j] -= f * b.c_[j];
    }
    r.resize(db);
    return {QPoly(std::move(q)), QPoly(std::move(r))};
  }
  friend QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }
  friend QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }
  bool divides(const QPoly& a) const { return (a % *this).is_zero(); }

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

  std::string str(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (sgn(c_[i]) == 0) continue;
      std::string c = to_string(abs(c_[i]));
      bool neg = sgn(c_[i]) < 0;
      if (!s.empty()) s += neg ? " - " : " + ";
      else if (neg) s += "-";
      if (i == 0) s += c;
      else {
        if (c != "1") s += c + "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const QPoly& p) { return os << p.str(); }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

inline bool is_zero(const QPoly& p) { return p.is_zero(); }

// Integer polynomials (ascending) used by the modular routines.
using ZPoly = std::vector<Int>;

// p = scale * z with z primitive integer and positive leading coefficient.
inline std::pair<ZPoly, Rat> primitive_part(const QPoly& p) {
  if (p.is_zero()) return {{}, Rat(0)};
  Int den = 1, g = 0;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z(p.coeffs().size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = p.coeffs()[i].get_num() * (den / p.coeffs()[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (sgn(z.back()) < 0) g = -g;
  for (auto& c : z) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  Rat scale(g, den);
  scale.canonicalize();
  return {z, scale};
}

inline QPoly from_z(const ZPoly& z) {
  std::vector<Rat> c(z.begin(), z.end());
  return QPoly(std::move(c));
}

inline modp::Poly reduce(const modp::Field& F, const ZPoly& z) {
  modp::Poly r(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) r[i] = F.from_int(z[i]);
  modp::trim(r);
  return r;
}

namespace detail {

inline Int symmetric(const Int& v, const Int& m) {
  Int h = m / 2;
  Int r = v % m;
  if (r < 0) r += m;
  return r > h ? r - m : r;
}

}  // namespace detail

// Monic gcd over Q. Small inputs use Euclid; larger ones a multi-modular
// algorithm whose candidate is accepted only after exact trial division.
inline QPoly gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return QPoly(1);
  if (a.degree() + b.degree() <= 8) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
      QPoly r = x % y;
      x = std::move(y);
      y = std::move(r);
    }
    return x.monic();
  }
  auto [za, sa] = primitive_part(a);
  auto [zb, sb] = primitive_part(b);
  Int lcg;
  mpz_gcd(lcg.get_mpz_t(), za.back().get_mpz_t(), zb.back().get_mpz_t());
  int best = std::min(a.degree(), b.degree()) + 1;
  std::vector<modp::Crt> crt;
  std::vector<Int> last;
  for (std::size_t i = 0;; ++i) {
    const modp::u64 p = modp::prime(i);
    modp::Field F{p};
    if (F.from_int(za.back()) == 0 || F.from_int(zb.back()) == 0) continue;
    modp::Poly g = modp::gcd(F, reduce(F, za), reduce(F, zb));
    const int dg = modp::degree(g);
    if (dg == 0) return QPoly(1);
    if (dg > best) continue;
    if (dg < best) {
      best = dg;
      crt.assign(dg + 1, modp::Crt{});
      last.clear();
    }
    g = modp::scale(F, g, F.from_int(lcg));
    for (int k = 0; k <= dg; ++k) crt[k].add(g[k], p);
    std::vector<Int> cur(dg + 1);
    for (int k = 0; k <= dg; ++k) cur[k] = detail::symmetric(crt[k].value, crt[k].modulus);
    if (cur == last) {
      QPoly cand = from_z(cur);
      auto [zc, sc] = primitive_part(cand);
      QPoly prim = from_z(zc);
      if (prim.divides(from_z(za)) && prim.divides(from_z(zb))) return prim.monic();
    }
    last = std::move(cur);
  }
}

inline QPoly lcm(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  return ((a / gcd(a, b)) * b).monic();
}

// Yun's algorithm: p = c * prod f_i^i with f_i square-free, pairwise coprime
// and monic. Returns (f_i, i) for non-constant f_i.
inline std::vector<std::pair<QPoly, int>> square_free(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  if (p.degree() < 1) return out;
  QPoly a = p.monic();
  QPoly b = a.derivative();
  QPoly c = gcd(a, b);
  QPoly w = a / c;
  QPoly y = b / c;
  int i = 1;
  for (;;) {
    QPoly z = y - w.derivative();
    if (z.is_zero()) {
      if (w.degree() > 0) out.emplace_back(w.monic(), i);
      break;
    }
    QPoly g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = w / g;
    y = z / g;
    ++i;
    if (w.degree() < 1) break;
  }
  return out;
}

// Distinct rational roots, ascending. Roots modulo a prime are lifted
// p-adically and rationally reconstructed; each is checked exactly.
inline std::vector<Rat> rational_roots(const QPoly& p) {
  std::vector<Rat> out;
  if (p.degree() < 1) return out;
  QPoly sf(1);
  for (const auto& [f, m] : square_free(p)) sf *= f;
  QPoly rest = sf;
  // Zero root first; it simplifies the bound below.
  if (sgn(rest.coeff(0)) == 0) {
    out.push_back(0);
    rest = rest / QPoly::t();
  }
  if (rest.degree() >= 1) {
    auto [z, s] = primitive_part(rest);
    QPoly zq = from_z(z);
    // |num| <= |a_0|, den <= |a_n|; precision must exceed 2 |a_0| |a_n|.
    Int need = 2 * abs(z.front()) * abs(z.back()) + 1;
    for (std::size_t i = 0;; ++i) {
      const modp::u64 p = modp::prime(i + 3);
      modp::Field F{p};
      modp::Poly zp = reduce(F, z);
      if (F.from_int(z.back()) == 0) continue;
      modp::Poly dz = modp::derivative(F, zp);
      if (modp::degree(modp::gcd(F, zp, dz)) > 0) continue;  // not square-free mod p
      ZPoly dzz(z.size() > 1 ? z.size() - 1 : 0);
      for (std::size_t k = 1; k < z.size(); ++k) dzz[k - 1] = z[k] * static_cast<unsigned long>(k);
      auto zeval = [](const ZPoly& f, const Int& x, const Int& m) {
        Int r = 0;
        for (std::size_t k = f.size(); k-- > 0;) r = (r * x + f[k]) % m;
        return r;
      };
      for (modp::u64 r0 : modp::roots(F, zp)) {
        Int x = static_cast<unsigned long>(r0);
        Int m = static_cast<unsigned long>(p);
        while (m <= need) {
          Int m2 = m * m;
          Int fx = zeval(z, x, m2), dfx = zeval(dzz, x, m2);
          Int inv;
          if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), m2.get_mpz_t()) == 0) break;
          x = (x - fx * inv) % m2;
          if (x < 0) x += m2;
          m = m2;
        }
        Rat cand;
        if (modp::rat_reconstruct(x, m, cand) && sgn(zq.eval(cand)) == 0) out.push_back(cand);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

inline modp::u64 resultant_mod(const modp::Field& F, modp::Poly a, modp::Poly b) {
  modp::trim(a);
  modp::trim(b);
  if (a.empty() || b.empty()) return 0;
  modp::u64 res = 1;
  for (;;) {
    const int da = modp::degree(a), db = modp::degree(b);
    if (db == 0) {
      for (int k = 0; k < da; ++k) res = F.mul(res, b[0]);
      return res;
    }
    modp::Poly r = modp::divmod(F, a, b).second;
    if (r.empty()) return 0;
    const int dr = modp::degree(r);
    if ((da * db) % 2) res = F.neg(res);
    for (int k = 0; k < da - dr; ++k) res = F.mul(res, b.back());
    a = std::move(b);
    b = std::move(r);
  }
}

inline Rat resultant_euclid(QPoly a, QPoly b) {
  if (a.is_zero() || b.is_zero()) return 0;
  Rat res = 1;
  for (;;) {
    const int da = a.degree(), db = b.degree();
    if (db == 0) return res * rat_pow(b.lead(), da);
    QPoly r = a % b;
    if (r.is_zero()) return 0;
    const int dr = r.degree();
    // res(a, b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
    if ((da * db) % 2) res = -res;
    res *= rat_pow(b.lead(), da - dr);
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace detail

// Resultant over Q. Small cases use the Euclidean remainder sequence; larger
// ones clear denominators and combine residues modulo primes up to twice the
// Hadamard bound ||A||^deg B ||B||^deg A.
inline Rat resultant(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() + b.degree() <= 8) return detail::resultant_euclid(a, b);
  auto [za, sa] = primitive_part(a);
  auto [zb, sb] = primitive_part(b);
  const int da = a.degree(), db = b.degree();
  auto norm_bits = [](const ZPoly& z) {
    std::size_t m = 0;
    for (const auto& c : z) m = std::max(m, mpz_sizeinbase(c.get_mpz_t(), 2));
    std::size_t len = 1;
    while ((1u << len) < z.size()) ++len;
    return m + len;
  };
  const std::size_t bits = db * norm_bits(za) + da * norm_bits(zb) + 2;
  modp::Crt crt;
  for (std::size_t i = 0; mpz_sizeinbase(crt.modulus.get_mpz_t(), 2) <= bits; ++i) {
    modp::Field F{modp::prime(i)};
    if (F.from_int(za.back()) == 0 || F.from_int(zb.back()) == 0) continue;
    crt.add(detail::resultant_mod(F, reduce(F, za), reduce(F, zb)), F.p);
  }
  Int r = detail::symmetric(crt.value, crt.modulus);
  // a = sa A, b = sb B: res(a, b) = sa^db sb^da res(A, B)
  return Rat(r) * rat_pow(sa, db) * rat_pow(sb, da);
}

}  // namespace lode_atlas
