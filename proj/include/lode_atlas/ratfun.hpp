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

// Reduced rational functions over Q in one variable t.

#include <string>
#include <utility>

#include "lode_atlas/upoly.hpp"

namespace lode_atlas {

class RatFun {
 public:
  RatFun() : num_(), den_(1) {}
  RatFun(const Rat& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFun(long c) : RatFun(Rat(c)) {}          // NOLINT(google-explicit-constructor)
  RatFun(QPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFun(QPoly n, QPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static RatFun t() { return RatFun(QPoly::t()); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  bool is_polynomial() const { return den_.degree() == 0; }
  Rat constant_value() const { return num_.coeff(0) / den_.coeff(0); }

  RatFun operator-() const { return RatFun(-num_, den_, raw{}); }
  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    QPoly g = gcd(a.den_, b.den_);
    if (g.degree() == 0) return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, raw{});
    QPoly ad = a.den_ / g, bd = b.den_ / g;
    return RatFun(a.num_ * bd + b.num_ * ad, ad * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num_ * b.num_, a.den_ * b.den_, raw{});
    QPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    return RatFun((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1), raw{});
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw DivisionByZero("rational function division by zero");
    return a * b.inv();
  }
  RatFun inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    return RatFun(den_, num_);
  }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  RatFun scaled(const Rat& s) const {
    if (sgn(s) == 0) return RatFun();
    return RatFun(num_.scaled(s), den_, raw{});
  }
  RatFun pow(int e) const {
    if (e < 0) return inv().pow(-e);
    return RatFun(num_.pow(e), den_.pow(e), raw{});
  }
  RatFun derivative() const {
    if (den_.degree() == 0) return RatFun(num_.derivative().scaled(Rat(1) / den_.coeff(0)));
    // (n/d)' = (n' d - n d') / d^2; reduce via g = gcd(d, d').
    QPoly dd = den_.derivative();
    QPoly g = gcd(den_, dd);
    QPoly dg = den_ / g;
    return RatFun(num_.derivative() * dg - num_ * (dd / g), dg * den_);
  }
  // this(q(t))
  RatFun compose(const RatFun& q) const {
    const int dn = num_.degree(), dd = den_.degree();
    const int n = std::max(dn, dd);
    // Homogenize: N(q) / D(q) = (sum n_i P^i Q^(n-i)) / (sum d_i P^i Q^(n-i)).
    auto hom = [&](const QPoly& p) {
      QPoly out;
      QPoly ppow(1);
      std::vector<QPoly> qpow(n + 1, QPoly(1));
      for (int i = 1; i <= n; ++i) qpow[i] = qpow[i - 1] * q.den_;
      for (int i = 0; i <= p.degree(); ++i) {
        if (sgn(p.coeff(i)) != 0) out += (ppow * qpow[n - i]).scaled(p.coeff(i));
        ppow *= q.num_;
      }
      return out;
    };
    if (num_.is_zero()) return RatFun();
    return RatFun(hom(num_), hom(den_));
  }
  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (sgn(d) == 0) throw DivisionByZero("rational function pole");
    return num_.eval(x) / d;
  }

  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  std::string str() const {
    if (den_.degree() == 0) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const RatFun& r) { return os << r.str(); }

 private:
  struct raw {};
  // Caller guarantees gcd(n, d) = 1; only the denominator is made monic.
  RatFun(QPoly n, QPoly d, raw) : num_(std::move(n)), den_(std::move(d)) { make_monic(); }

  void normalize() {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = QPoly(1);
      return;
    }
    QPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    make_monic();
  }
  void make_monic() {
    if (num_.is_zero()) {
      den_ = QPoly(1);
      return;
    }
    const Rat l = den_.lead();
    if (l != 1) {
      num_ = num_.scaled(Rat(1) / l);
      den_ = den_.scaled(Rat(1) / l);
    }
  }

  QPoly num_, den_;
};

inline bool is_zero(const RatFun& r) { return r.is_zero(); }

}  // namespace lode_atlas
