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

// Monic linear differential operators d^n/dt^n + a_{n-1} d^{n-1}/dt^{n-1} + ...
// + a_0 over Q(t), and the gauge, pullback and exp-product transformations.

#include <string>
#include <vector>

#include "lode_atlas/matrix.hpp"
#include "lode_atlas/ratfun.hpp"

namespace lode_atlas {

class LinODE {
 public:
  LinODE() = default;
  // coeffs = a_0 .. a_{n-1}
  explicit LinODE(std::vector<RatFun> coeffs) : a_(std::move(coeffs)) {}

  int order() const { return static_cast<int>(a_.size()); }
  const std::vector<RatFun>& coeffs() const { return a_; }
  const RatFun& coeff(int i) const { return a_.at(i); }

  // L(y) for a rational function y.
  RatFun apply(const RatFun& y) const {
    RatFun acc, d = y;
    for (int i = 0; i < order(); ++i) {
      acc += a_[i] * d;
      d = d.derivative();
    }
    return acc + d;
  }

  // Polynomial coefficients P_0..P_n (P_n the common denominator), integral
  // and primitive with positive leading coefficient of P_n.
  std::vector<QPoly> cleared() const {
    QPoly den(1);
    for (const auto& c : a_) den = lcm(den, c.den());
    std::vector<QPoly> p;
    for (const auto& c : a_) p.push_back(c.num() * (den / c.den()));
    p.push_back(den);
    Int l = 1;
    for (const auto& q : p)
      for (const auto& c : q.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Int g = 0;
    for (auto& q : p) {
      q = q.scaled(Rat(l));
      for (const auto& c : q.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    }
    if (g != 0 && g != 1)
      for (auto& q : p) q = q.scaled(Rat(1, 1) / Rat(g));
    return p;
  }

  friend bool operator==(const LinODE& a, const LinODE& b) { return a.a_ == b.a_; }
  friend bool operator!=(const LinODE& a, const LinODE& b) { return !(a == b); }

  std::string str() const {
    std::string s = "D^" + std::to_string(order());
    for (int i = order(); i-- > 0;) {
      if (a_[i].is_zero()) continue;
      s += " + (" + a_[i].str() + ")";
      if (i > 0) s += "*D" + (i > 1 ? "^" + std::to_string(i) : std::string());
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const LinODE& L) { return os << L.str(); }

 private:
  std::vector<RatFun> a_;
};

namespace detail {

// The monic operator annihilating x = sum_j v0_j * (y^(j) o h) * g for all
// solutions y of L, where h' = hp and g'/g = u (both in Q(t)). The
// coefficients of L are given already composed with h.
inline LinODE transformed_annihilator(const std::vector<RatFun>& a_of_h, const std::vector<RatFun>& v0,
                                      const RatFun& hp, const RatFun& u) {
  const int n = static_cast<int>(a_of_h.size());
  auto D = [&](const std::vector<RatFun>& v) {
    std::vector<RatFun> w(n);
    for (int j = 0; j < n; ++j) {
      RatFun s = v[j].derivative();
      if (!u.is_zero()) s += u * v[j];
      RatFun shift = j > 0 ? v[j - 1] : RatFun();
      if (!v[n - 1].is_zero()) shift -= v[n - 1] * a_of_h[j];
      s += hp * shift;
      w[j] = s;
    }
    return w;
  };
  std::vector<std::vector<RatFun>> vs = {v0};
  for (int k = 0; k < n; ++k) vs.push_back(D(vs.back()));
  Matrix<RatFun> A(n, n, RatFun());
  std::vector<RatFun> rhs(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) A(j, k) = vs[k][j];
    rhs[j] = -vs[n][j];
  }
  auto b = solve(A, rhs);
  if (!b) throw DegenerateGauge("the transformed vectors are linearly dependent");
  return LinODE(*b);
}

}  // namespace detail

// Operator for x = f_0 y + f_1 y' + ... + f_{n-1} y^(n-1).
inline LinODE gauge_transform(const LinODE& L, std::vector<RatFun> f) {
  if (static_cast<int>(f.size()) > L.order()) throw ShapeMismatch("gauge vector longer than the order");
  f.resize(L.order());
  bool any = false;
  for (const auto& x : f) any = any || !x.is_zero();
  if (!any) throw DegenerateGauge("zero gauge vector");
  return detail::transformed_annihilator(L.coeffs(), f, RatFun(1), RatFun());
}

// Operator for y(h(t)).
inline LinODE pullback(const LinODE& L, const RatFun& h) {
  RatFun hp = h.derivative();
  if (hp.is_zero()) throw ConstantPullback("pullback by a constant");
  std::vector<RatFun> a;
  for (const auto& c : L.coeffs()) a.push_back(c.compose(h));
  std::vector<RatFun> v0(L.order());
  v0[0] = RatFun(1);
  return detail::transformed_annihilator(a, v0, hp, RatFun());
}

// Operator for f^(1/lam) * y; only f'/(lam f) enters.
inline LinODE exp_product(const LinODE& L, const RatFun& f, long lam) {
  if (f.is_zero()) throw ZeroScale("exp_product with f = 0");
  if (lam == 0) throw InvalidParameter("exp_product with lambda = 0");
  RatFun u = (f.derivative() / f).scaled(make_rat(1, lam));
  // Direct substitution y = g^-1 x keeps everything in closed form: the
  // operator is sum_k a_k (d - u)^k with a_n = 1.
  std::vector<RatFun> v0(L.order());
  v0[0] = RatFun(1);
  return detail::transformed_annihilator(L.coeffs(), v0, RatFun(1), u);
}

// The monic operator with solutions t^(1-b_j) ... : the generalized
// hypergeometric equation theta prod (theta + b_j - 1) - t prod (theta + a_i)
// for pF(p-1)(a; b | t), written in d/dt.
inline LinODE hypergeometric_operator(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size() + 1) throw InvalidParameter("need p upper and p-1 lower parameters");
  const int n = static_cast<int>(a.size());
  // Polynomials in theta: lower = theta prod (theta + b_j - 1), upper = prod(theta + a_i).
  QPoly lower = QPoly::t(), upper(1);
  for (const auto& bj : b) lower *= QPoly(std::vector<Rat>{bj - 1, Rat(1)});
  for (const auto& ai : a) upper *= QPoly(std::vector<Rat>{ai, Rat(1)});
  // theta^k = sum_j s(k, j) t^j d^j with Stirling numbers of the second kind.
  std::vector<std::vector<Rat>> S(n + 1, std::vector<Rat>(n + 1));
  S[0][0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int j = 1; j <= k; ++j) S[k][j] = S[k - 1][j - 1] + Rat(j) * S[k - 1][j];
  // Operator sum_j c_j(t) d^j with c_j = t^j (L_j - t U_j).
  std::vector<QPoly> c(n + 1);
  for (int j = 0; j <= n; ++j) {
    Rat lj = 0, uj = 0;
    for (int k = j; k <= n; ++k) {
      lj += lower.coeff(k) * S[k][j];
      uj += upper.coeff(k) * S[k][j];
    }
    c[j] = QPoly::monomial(j) * QPoly(std::vector<Rat>{lj, -uj});
  }
  std::vector<RatFun> out;
  for (int j = 0; j < n; ++j) out.push_back(RatFun(c[j], c[n]));
  return LinODE(out);
}

}  // namespace lode_atlas
