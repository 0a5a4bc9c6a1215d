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

// Rational solutions of linear differential operators over Q(t).
//
// Pole orders at each finite singularity are bounded by the negative integer
// roots of the indicial polynomial there, and the numerator degree by the
// integer roots at infinity. The ansatz N / Den is then solved exactly.
// Singular points that are roots of an irreducible factor of higher degree
// (apparent singularities of symmetric powers, say) are handled through the
// norm of their indicial polynomial.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lode_atlas/errors.hpp"
#include "lode_atlas/linode.hpp"
#include "lode_atlas/matrix.hpp"

namespace lode_atlas {

namespace detail {

// rho (rho - 1) ... (rho - i + 1) as a polynomial in rho.
inline QPoly falling(int i, const Rat& shift = 0) {
  QPoly r(1);
  for (int k = 0; k < i; ++k) r = r * QPoly(std::vector<Rat>{shift - k, Rat(1)});
  return r;
}

inline int valuation(const QPoly& p) {
  if (p.is_zero()) return -1;
  int v = 0;
  while (sgn(p.coeff(v)) == 0) ++v;
  return v;
}

// Indicial polynomial at s = 0 of sum_i Q_i(s) (d/ds)^i.
inline QPoly indicial_at_zero(const std::vector<QPoly>& Q) {
  int best = 0;
  bool first = true;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (Q[i].is_zero()) continue;
    int v = valuation(Q[i]) - static_cast<int>(i);
    if (first || v < best) best = v;
    first = false;
  }
  QPoly out;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    if (Q[i].is_zero()) continue;
    if (valuation(Q[i]) - static_cast<int>(i) == best)
      out = out + falling(static_cast<int>(i)).scaled(Q[i].coeff(valuation(Q[i])));
  }
  return out;
}

}  // namespace detail

// Indicial polynomial in rho at a finite point: t^rho-type local exponents.
inline QPoly indicial_polynomial(const LinODE& L, const Rat& point) {
  std::vector<QPoly> P = L.cleared();
  for (auto& p : P) p = p.shift(point);
  return detail::indicial_at_zero(P);
}

// At infinity the exponent rho means solutions behaving like t^(-rho); for a
// hypergeometric operator these are the upper parameters.
inline QPoly indicial_polynomial_at_infinity(const LinODE& L) {
  return indicial_polynomial(pullback(L, RatFun(1) / RatFun::t()), Rat(0));
}

inline std::vector<Rat> indicial_roots(const LinODE& L, const Rat& point) {
  return rational_roots(indicial_polynomial(L, point));
}
inline std::vector<Rat> indicial_roots_at_infinity(const LinODE& L) {
  return rational_roots(indicial_polynomial_at_infinity(L));
}
// Point given as nullopt stands for infinity.
inline std::vector<Rat> indicial_roots(const LinODE& L, const std::optional<Rat>& point) {
  return point ? indicial_roots(L, *point) : indicial_roots_at_infinity(L);
}

// Lowest common denominator of the (monic) operator's coefficients.
inline QPoly singular_polynomial(const LinODE& L) {
  QPoly den(1);
  for (const auto& c : L.coeffs()) den = lcm(den, c.den());
  return den.monic();
}

struct SingularPoint {
  Rat point;
  int multiplicity = 0;     // in the singular polynomial
  std::vector<Rat> roots;   // rational indicial roots
  int irrational_roots = 0; // indicial roots outside Q, counted with multiplicity
};

struct SingularityData {
  std::vector<SingularPoint> finite;
  std::vector<Rat> infinity_roots;
  int infinity_irrational = 0;
  std::vector<std::pair<QPoly, int>> other_factors;  // no rational root
};

namespace detail {

inline int irrational_count(const QPoly& ind, const std::vector<Rat>& roots) {
  QPoly rest = ind;
  for (const auto& r : roots)
    while (rest.degree() > 0 && sgn(rest.eval(r)) == 0) rest = rest / QPoly::linear(r);
  return std::max(0, rest.degree());
}

// Splits a square-free polynomial into parts on which every factor of a
// vanishes to the same order or not at all.
inline std::vector<QPoly> split_by(std::vector<QPoly> parts, QPoly a) {
  while (!a.is_zero()) {
    std::vector<QPoly> next;
    bool any = false;
    for (const auto& q : parts) {
      QPoly g = gcd(q, a);
      if (g.degree() > 0 && g.degree() < q.degree()) {
        next.push_back(g);
        next.push_back((q / g).monic());
      } else {
        next.push_back(q);
      }
      any = any || g.degree() > 0;
    }
    parts = std::move(next);
    if (!any) break;
    a = a.derivative();
  }
  return parts;
}

// If every c_k / c_top is a rational constant modulo the square-free q,
// returns those constants (ascending in the variable); nullopt otherwise.
inline std::optional<std::vector<Rat>> constant_ratios(const std::vector<QPoly>& c, const QPoly& q) {
  const QPoly& top = c.back();
  auto [zq, sq] = primitive_part(q);
  std::vector<modp::Crt> crt(c.size());
  for (std::size_t pi = 0; pi < 60; ++pi) {
    modp::Field F{modp::prime(pi)};
    modp::Poly qp = reduce(F, zq);
    if (modp::degree(qp) != q.degree()) continue;
    auto red = [&](const QPoly& a) -> std::optional<modp::Poly> {
      modp::Poly r;
      for (const auto& x : a.coeffs()) {
        modp::u64 v;
        if (!F.from_rat(x, v)) return std::nullopt;
        r.push_back(v);
      }
      modp::trim(r);
      return modp::divmod(F, r, qp).second;
    };
    auto tp = red(top);
    if (!tp) continue;
    // inverse of top modulo q by the extended Euclidean algorithm
    modp::Poly r0 = qp, r1 = *tp, s0{}, s1{1};
    while (!r1.empty() && modp::degree(r1) > 0) {
      auto [qq, rr] = modp::divmod(F, r0, r1);
      modp::Poly s2 = modp::sub(F, s0, modp::mul(F, qq, s1));
      r0 = std::move(r1);
      r1 = std::move(rr);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.empty()) continue;  // top shares a root with q modulo p
    modp::Poly inv = modp::scale(F, s1, F.inv(r1[0]));
    std::vector<modp::u64> vals;
    for (const auto& ck : c) {
      auto cp = red(ck);
      if (!cp) break;
      modp::Poly ratio = modp::divmod(F, modp::mul(F, *cp, inv), qp).second;
      if (modp::degree(ratio) > 0) return std::nullopt;
      vals.push_back(ratio.empty() ? 0 : ratio[0]);
    }
    if (vals.size() != c.size()) continue;
    bool ok = true;
    std::vector<Rat> cand(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      crt[k].add(vals[k], F.p);
      ok = ok && modp::rat_reconstruct(crt[k].value, crt[k].modulus, cand[k]);
    }
    if (!ok) continue;
    bool exact = true;
    for (std::size_t k = 0; k < c.size() && exact; ++k) exact = ((c[k] - top.scaled(cand[k])) % q).is_zero();
    if (exact) return cand;
  }
  return std::nullopt;
}

// Integer roots of the indicial polynomials at all roots of the square-free
// q, via the norm Res_x(q(x), I(x, rho)) interpolated in rho.
inline std::vector<Int> integer_roots_over(const std::vector<QPoly>& P, const QPoly& q) {
  std::vector<QPoly> parts{q.monic()};
  for (const auto& p : P) parts = split_by(parts, p);
  std::vector<Int> out;
  for (const auto& part : parts) {
    // valuations and leading coefficients along part
    std::vector<int> v(P.size(), -1);
    std::vector<QPoly> lead(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
      if (P[i].is_zero()) continue;
      QPoly d = P[i];
      Rat fact = 1;
      for (int j = 0; !d.is_zero(); ++j) {
        if (j > 0) fact *= j;
        if (gcd(part, d).degree() == 0) {
          v[i] = j;
          lead[i] = (d % part).scaled(1 / fact);
          break;
        }
        d = d.derivative();
      }
    }
    int best = 0;
    bool first = true;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (v[i] >= 0 && (first || v[i] - static_cast<int>(i) < best)) {
        best = v[i] - static_cast<int>(i);
        first = false;
      }
    std::vector<int> S;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (v[i] >= 0 && v[i] - static_cast<int>(i) == best) S.push_back(static_cast<int>(i));
    const int lo = S.front(), hi = S.back();
    // I = falling(rho, lo) * J with J = sum lead_i falling(rho - lo, i - lo).
    for (int r = 0; r < lo; ++r) out.push_back(r);
    if (hi == lo) continue;
    // Usually J / lead_hi has constant coefficients along part (all roots
    // share the exponents). That is detected modulo primes, reconstructed and
    // then confirmed by exact division.
    std::vector<QPoly> jc(hi - lo + 1);  // coefficients of J in rho
    for (int i : S) {
      QPoly f = falling(i - lo);
      for (int k = 0; k <= f.degree(); ++k) jc[k] = jc[k] + lead[i].scaled(f.coeff(k));
    }
    if (auto consts = constant_ratios(jc, part)) {
      for (const auto& r : rational_roots(QPoly(*consts)))
        if (r.get_den() == 1) out.push_back(r.get_num() + lo);
      continue;
    }
    const int deg = (hi - lo) * part.degree();
    std::vector<Rat> xs, ys;
    for (int j = 0; j <= deg; ++j) {
      const Rat rho = j;
      QPoly J;
      for (int i : S) J = J + lead[i].scaled(falling(i - lo).eval(rho - lo));
      xs.push_back(rho);
      ys.push_back(resultant(part, J % part));
    }
    // Lagrange interpolation in rho.
    QPoly N;
    for (int a = 0; a <= deg; ++a) {
      QPoly term(ys[a]);
      for (int b = 0; b <= deg; ++b)
        if (b != a) term = term * QPoly::linear(xs[b]).scaled(1 / (xs[a] - xs[b]));
      N = N + term;
    }
    if (N.is_zero()) throw UnsupportedFactor("degenerate indicial norm along " + part.str());
    for (const auto& r : rational_roots(N))
      if (r.get_den() == 1) out.push_back(r.get_num());
  }
  return out;
}

}  // namespace detail

inline SingularityData singularity_data(const LinODE& L) {
  SingularityData out;
  const QPoly den = singular_polynomial(L);
  for (const auto& [f, m] : square_free(den)) {
    QPoly rest = f;
    for (const auto& r : rational_roots(f)) {
      rest = rest / QPoly::linear(r);
      SingularPoint sp;
      sp.point = r;
      sp.multiplicity = m;
      QPoly ind = indicial_polynomial(L, r);
      sp.roots = rational_roots(ind);
      sp.irrational_roots = detail::irrational_count(ind, sp.roots);
      out.finite.push_back(std::move(sp));
    }
    if (rest.degree() > 0) out.other_factors.emplace_back(rest.monic(), m);
  }
  std::sort(out.finite.begin(), out.finite.end(), [](const auto& a, const auto& b) { return a.point < b.point; });
  QPoly inf = indicial_polynomial_at_infinity(L);
  out.infinity_roots = rational_roots(inf);
  out.infinity_irrational = detail::irrational_count(inf, out.infinity_roots);
  return out;
}

namespace detail {

// Normalization: the lowest nonzero numerator coefficient is 1.
inline RatFun normalized(const RatFun& r) {
  const auto& c = r.num().coeffs();
  for (const auto& x : c)
    if (sgn(x) != 0) return r.scaled(1 / x);
  return r;
}

}  // namespace detail

// A Q-basis of the rational solutions of L.
inline std::vector<RatFun> rational_solutions(const LinODE& L) {
  const int n = L.order();
  if (n == 0) return {};
  const SingularityData sd = singularity_data(L);
  std::vector<QPoly> P = L.cleared();

  // Denominator ansatz.
  QPoly Den(1);
  for (const auto& sp : sd.finite) {
    Int lowest = 0;
    for (const auto& r : sp.roots)
      if (r.get_den() == 1 && r.get_num() < lowest) lowest = r.get_num();
    if (lowest < 0) Den = Den * QPoly::linear(sp.point).pow(static_cast<int>(-lowest.get_si()));
  }
  for (const auto& [q, m] : sd.other_factors) {
    Int lowest = 0;
    for (const auto& r : detail::integer_roots_over(P, q))
      if (r < lowest) lowest = r;
    if (lowest < 0) Den = Den * q.pow(static_cast<int>(-lowest.get_si()));
  }

  // Degree bound from infinity: y ~ t^(-rho).
  std::optional<Int> lowest_inf;
  for (const auto& r : sd.infinity_roots)
    if (r.get_den() == 1 && (!lowest_inf || r.get_num() < *lowest_inf)) lowest_inf = r.get_num();
  if (!lowest_inf) return {};
  const long D = Den.degree() - lowest_inf->get_si();
  if (D < 0) return {};

  // L_cleared(t^k / Den) * Den^(n+1) = sum_i P_i A_{k,i} Den^(n-i), where
  // (d/dt)^i (t^k / Den) = A_{k,i} / Den^(i+1).
  const QPoly dDen = Den.derivative();
  std::vector<QPoly> Dpow{QPoly(1)};
  for (int i = 1; i <= n; ++i) Dpow.push_back(Dpow.back() * Den);
  std::vector<QPoly> R;
  for (long k = 0; k <= D; ++k) {
    QPoly A = QPoly::monomial(static_cast<int>(k));
    QPoly acc;
    for (int i = 0; i <= n; ++i) {
      acc = acc + P[i] * A * Dpow[n - i];
      if (i < n) A = A.derivative() * Den - A * dDen.scaled(Rat(i + 1));
    }
    R.push_back(acc);
  }
  int rows = 0;
  for (const auto& r : R) rows = std::max(rows, r.degree() + 1);
  Matrix<Rat> M(std::max(rows, 1), D + 1, Rat(0));
  for (long k = 0; k <= D; ++k)
    for (int j = 0; j <= R[k].degree(); ++j) M(j, k) = R[k].coeff(j);
  auto piv = row_reduce(M);
  std::vector<RatFun> out;
  std::vector<bool> is_piv(D + 1, false);
  for (auto c : piv) is_piv[c] = true;
  for (long f = 0; f <= D; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rat> num(D + 1, Rat(0));
    num[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) num[piv[r]] = -M(r, f);
    RatFun sol(QPoly(num), Den);
    if (!L.apply(sol).is_zero()) throw CertificationFailure("rational solution failed re-substitution");
    out.push_back(detail::normalized(sol));
  }
  return out;
}

}  // namespace lode_atlas
