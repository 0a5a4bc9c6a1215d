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

// Symmetric powers of linear differential operators.
//
// w_k = d^k(y^d) is a vector over the degree-d monomials in y, y', ...,
// y^(n-1). With L cleared to P_n y^(n) + ... + P_0 y and D = P_n, the
// numerators W_k = D^k w_k are integer polynomial vectors satisfying
//   W_{k+1} = D W_k' - k D' W_k + Theta(W_k),
// where Theta is D times the derivation on monomials with y^(n) replaced
// by -(P_0 y + ... + P_{n-1} y^(n-1))/D. The first relation
// w_r + c_{r-1} w_{r-1} + ... + c_0 w_0 = 0 gives the operator.
//
// The order and the c_i are found modulo primes (evaluation at points,
// rational function reconstruction, Chinese remaindering and rational
// reconstruction). The result is then certified over Q: independence of
// w_0..w_{r-1} follows from a nonzero minor modulo p of integer data, and the
// relation Q W_r + sum N_i D^(r-i) W_i = 0 is checked exactly by evaluating
// it at t = 2^b, where 2^b exceeds twice a bound on its integer coefficients.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lode_atlas/linode.hpp"
#include "lode_atlas/modular.hpp"

namespace lode_atlas {

struct SymPowerStats {
  int order = 0;
  int monomials = 0;
  int primes = 0;
  int points = 0;
  long certificate_bits = 0;
};

namespace detail {

using modp::u64;

// Monomials y^e0 y'^e1 ... of total degree d and their images under the
// derivation, as (target, multiplicity, source polynomial index) with index
// n meaning D and index i < n meaning -P_i.
struct MonomialBasis {
  int n = 0, d = 0;
  std::vector<std::vector<int>> exps;
  std::map<std::vector<int>, int> index;
  struct Image {
    int target;
    long mult;
    int poly;
  };
  std::vector<std::vector<Image>> images;

  MonomialBasis(int n_, int d_) : n(n_), d(d_) {
    std::vector<int> e(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == n - 1) {
        e[pos] = left;
        index[e] = static_cast<int>(exps.size());
        exps.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[pos] = k;
        rec(pos + 1, left - k);
      }
    };
    rec(0, d);
    images.resize(exps.size());
    for (std::size_t m = 0; m < exps.size(); ++m) {
      const auto& ex = exps[m];
      for (int j = 0; j < n; ++j) {
        if (ex[j] == 0) continue;
        if (j < n - 1) {
          auto t = ex;
          --t[j];
          ++t[j + 1];
          images[m].push_back({index.at(t), ex[j], n});
        } else {
          for (int i = 0; i < n; ++i) {
            auto t = ex;
            --t[j];
            ++t[i];
            images[m].push_back({index.at(t), ex[j], i});
          }
        }
      }
    }
  }
  int size() const { return static_cast<int>(exps.size()); }
  int of_power() const {  // y^d
    std::vector<int> e(n, 0);
    e[0] = d;
    return index.at(e);
  }
};

// ---- integer polynomial helpers -------------------------------------------

inline void zp_trim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline void zp_addmul(ZPoly& acc, const ZPoly& a, const ZPoly& b, long scale) {
  if (a.empty() || b.empty() || scale == 0) return;
  if (acc.size() < a.size() + b.size() - 1) acc.resize(a.size() + b.size() - 1);
  Int tmp;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (sgn(b[j]) == 0) continue;
      mpz_mul(tmp.get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
      if (scale != 1) mpz_mul_si(tmp.get_mpz_t(), tmp.get_mpz_t(), scale);
      acc[i + j] += tmp;
    }
  }
}

inline ZPoly zp_derivative(const ZPoly& a) {
  if (a.size() <= 1) return {};
  ZPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<unsigned long>(i);
  return r;
}

inline Int zp_max_abs(const ZPoly& a) {
  Int m = 0;
  for (const auto& c : a)
    if (abs(c) > m) m = abs(c);
  return m;
}

inline Int zp_l1(const ZPoly& a) {
  Int s = 0;
  for (const auto& c : a) s += abs(c);
  return s;
}

// a(2^b) by splitting, so the cost is quasi-linear in the output size.
inline Int zp_eval_pow2(const ZPoly& a, std::size_t lo, std::size_t hi, unsigned long b) {
  if (hi <= lo) return 0;
  if (hi - lo == 1) return a[lo];
  std::size_t mid = (lo + hi) / 2;
  Int high = zp_eval_pow2(a, mid, hi, b);
  mpz_mul_2exp(high.get_mpz_t(), high.get_mpz_t(), b * (mid - lo));
  return high + zp_eval_pow2(a, lo, mid, b);
}
inline Int zp_eval_pow2(const ZPoly& a, unsigned long b) { return zp_eval_pow2(a, 0, a.size(), b); }

// One step of the W recurrence over Z.
inline std::vector<ZPoly> zp_step(const MonomialBasis& B, const std::vector<ZPoly>& P, const ZPoly& dD,
                                  const std::vector<ZPoly>& W, long k) {
  const int n = B.n;
  std::vector<ZPoly> out(W.size());
  for (int m = 0; m < B.size(); ++m) {
    if (W[m].empty()) continue;
    zp_addmul(out[m], P[n], zp_derivative(W[m]), 1);
    if (k) zp_addmul(out[m], dD, W[m], -k);
    for (const auto& im : B.images[m])
      zp_addmul(out[im.target], P[im.poly], W[m], im.poly == n ? im.mult : -im.mult);
  }
  for (auto& p : out) zp_trim(p);
  return out;
}

// ---- modular helpers --------------------------------------------------------

inline std::vector<modp::Poly> mp_step(const modp::Field& F, const MonomialBasis& B,
                                       const std::vector<modp::Poly>& P, const modp::Poly& dD,
                                       const std::vector<modp::Poly>& W, long k) {
  const int n = B.n;
  std::vector<modp::Poly> out(W.size());
  auto addmul = [&](modp::Poly& acc, const modp::Poly& a, const modp::Poly& b, long s) {
    if (a.empty() || b.empty()) return;
    modp::Poly prod = modp::mul(F, a, b);
    u64 sc = F.from_long(s);
    if (acc.size() < prod.size()) acc.resize(prod.size(), 0);
    for (std::size_t i = 0; i < prod.size(); ++i) acc[i] = F.add(acc[i], F.mul(prod[i], sc));
  };
  for (int m = 0; m < B.size(); ++m) {
    if (W[m].empty()) continue;
    addmul(out[m], P[n], modp::derivative(F, W[m]), 1);
    if (k) addmul(out[m], dD, W[m], -k);
    for (const auto& im : B.images[m]) addmul(out[im.target], P[im.poly], W[m], im.poly == n ? im.mult : -im.mult);
  }
  for (auto& p : out) modp::trim(p);
  return out;
}

// Solves sum_{i<r} x_i col_i = rhs modulo p; cols are length-M vectors.
// Returns false when the columns are dependent.
inline bool mp_solve(const modp::Field& F, std::vector<std::vector<u64>> cols, std::vector<u64> rhs,
                     std::vector<u64>& x) {
  const std::size_t r = cols.size(), M = rhs.size();
  // Row-major augmented matrix M x (r+1).
  std::vector<std::vector<u64>> a(M, std::vector<u64>(r + 1));
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = 0; j < r; ++j) a[i][j] = cols[j][i];
    a[i][r] = rhs[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivcol;
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t piv = row;
    while (piv < M && a[piv][c] == 0) ++piv;
    if (piv == M) return false;
    std::swap(a[piv], a[row]);
    u64 inv = F.inv(a[row][c]);
    for (std::size_t j = c; j <= r; ++j) a[row][j] = F.mul(a[row][j], inv);
    for (std::size_t i = 0; i < M; ++i) {
      if (i == row || a[i][c] == 0) continue;
      u64 f = a[i][c];
      for (std::size_t j = c; j <= r; ++j) a[i][j] = F.sub(a[i][j], F.mul(f, a[row][j]));
    }
    ++row;
  }
  for (std::size_t i = r; i < M; ++i)
    if (a[i][r] != 0) return false;  // inconsistent
  x.assign(r, 0);
  for (std::size_t c = 0; c < r; ++c) x[c] = a[c][r];
  return true;
}

// Rank of vectors at a point, used to find the order.
class IncrementalRank {
 public:
  explicit IncrementalRank(const modp::Field& F) : F_(F) {}
  // Adds v; returns true if it increased the rank.
  bool add(std::vector<u64> v) {
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      u64 f = v[piv_[b]];
      if (f == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = F_.sub(v[i], F_.mul(f, basis_[b][i]));
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    u64 inv = F_.inv(v[p]);
    for (auto& x : v) x = F_.mul(x, inv);
    for (auto& bv : basis_) {
      u64 f = bv[p];
      if (f == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) bv[i] = F_.sub(bv[i], F_.mul(f, v[i]));
    }
    basis_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }

 private:
  modp::Field F_;
  std::vector<std::vector<u64>> basis_;
  std::vector<std::size_t> piv_;
};

struct ModularImage {
  int order = 0;
  modp::Poly Q;               // monic common denominator
  std::vector<modp::Poly> N;  // numerators, c_i = N_i / Q
  int points = 0;
};

// Computes the operator modulo one prime. order_hint < 0 means unknown.
inline bool modular_image(const modp::Field& F, const MonomialBasis& B, const std::vector<ZPoly>& Pz,
                          int order_hint, std::uint64_t seed, ModularImage& out) {
  const int n = B.n;
  std::vector<modp::Poly> P;
  for (const auto& z : Pz) P.push_back(reduce(F, z));
  if (modp::degree(P[n]) != static_cast<int>(Pz[n].size()) - 1) return false;
  modp::Poly dD = modp::derivative(F, P[n]);
  std::mt19937_64 rng(seed);
  auto random_point = [&]() {
    for (;;) {
      u64 x = rng() % F.p;
      if (modp::eval(F, P[n], x) != 0) return x;
    }
  };
  auto values = [&](const std::vector<modp::Poly>& W, u64 x) {
    std::vector<u64> v(W.size());
    for (std::size_t m = 0; m < W.size(); ++m) v[m] = modp::eval(F, W[m], x);
    return v;
  };
  std::vector<std::vector<modp::Poly>> Ws;
  std::vector<modp::Poly> W(B.size());
  W[B.of_power()] = {1};
  Ws.push_back(W);
  int r = -1;
  if (order_hint >= 0) {
    for (int k = 0; k < order_hint; ++k) Ws.push_back(mp_step(F, B, P, dD, Ws.back(), k));
    r = order_hint;
  } else {
    u64 x1 = random_point(), x2 = random_point();
    IncrementalRank R1(F), R2(F);
    for (int k = 0;; ++k) {
      bool a = R1.add(values(Ws.back(), x1));
      bool b = R2.add(values(Ws.back(), x2));
      if (!a && !b) {
        r = k;
        break;
      }
      if (k == B.size()) return false;
      Ws.push_back(mp_step(F, B, P, dD, Ws.back(), k));
    }
    Ws.resize(r + 1);
  }
  out.order = r;
  // Values of c_i at the nodes base, base+1, ..., doubling the count until
  // the reconstruction is stable. Equispaced nodes make the divided
  // differences cheap.
  const u64 base = rng() % (F.p / 2);
  std::vector<std::vector<u64>> cs(r);
  auto sample = [&](std::size_t count) {
    for (std::size_t i = cs.empty() ? count : cs[0].size(); i < count; ++i) {
      const u64 x = F.add(base, i % F.p);
      u64 dx = modp::eval(F, P[n], x);
      if (dx == 0) return false;
      std::vector<std::vector<u64>> cols;
      u64 dpow = 1, dinv = F.inv(dx);
      std::vector<u64> rhs;
      for (int k = 0; k <= r; ++k) {
        auto v = values(Ws[k], x);
        for (auto& e : v) e = F.mul(e, dpow);
        dpow = F.mul(dpow, dinv);
        if (k < r) cols.push_back(std::move(v));
        else {
          for (auto& e : v) e = F.neg(e);
          rhs = std::move(v);
        }
      }
      std::vector<u64> sol;
      if (!mp_solve(F, cols, rhs, sol)) return false;  // unlucky node or prime
      for (int i2 = 0; i2 < r; ++i2) cs[i2].push_back(sol[i2]);
    }
    return true;
  };
  std::vector<u64> invs{0, 1};
  auto interpolate = [&](const std::vector<u64>& ys, std::size_t count) {
    while (invs.size() < count) invs.push_back(F.inv(invs.size()));
    std::vector<u64> c(ys.begin(), ys.begin() + count);
    for (std::size_t j = 1; j < count; ++j)
      for (std::size_t i = count - 1; i >= j; --i) c[i] = F.mul(F.sub(c[i], c[i - 1]), invs[j]);
    modp::Poly res;
    for (std::size_t i = count; i-- > 0;) {
      const u64 xi = F.add(base, i);
      modp::Poly nr(res.size() + 1, 0);
      for (std::size_t k = 0; k < res.size(); ++k) {
        nr[k + 1] = F.add(nr[k + 1], res[k]);
        nr[k] = F.sub(nr[k], F.mul(res[k], xi));
      }
      nr[0] = F.add(nr[0], c[i]);
      res = std::move(nr);
    }
    modp::trim(res);
    return res;
  };
  if (r == 0) {
    out.Q = {1};
    return true;
  }
  for (std::size_t count = 16;; count *= 2) {
    if (count > 16384) return false;
    if (!sample(count + 4)) return false;
    modp::Poly mod{1};
    for (std::size_t i = 0; i < count; ++i) mod = modp::mul(F, mod, modp::Poly{F.neg(F.add(base, i)), 1});
    std::vector<modp::Poly> nums(r), dens(r);
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      modp::Poly a = interpolate(cs[i], count);
      ok = modp::ratfun_reconstruct(F, mod, a, nums[i], dens[i]);
      if (!ok) break;
      // The fit must leave room and agree at the check nodes.
      if (modp::degree(nums[i]) + modp::degree(dens[i]) + 4 > static_cast<int>(count)) ok = false;
      for (std::size_t j = count; ok && j < count + 4; ++j) {
        const u64 x = F.add(base, j);
        u64 dv = modp::eval(F, dens[i], x);
        if (dv == 0 || F.mul(modp::eval(F, nums[i], x), F.inv(dv)) != cs[i][j]) ok = false;
      }
    }
    if (!ok) continue;
    modp::Poly Q{1};
    for (int i = 0; i < r; ++i) {
      if (nums[i].empty()) continue;
      modp::Poly g = modp::gcd(F, Q, dens[i]);
      Q = modp::mul(F, Q, modp::divmod(F, dens[i], g).first);
    }
    Q = modp::monic(F, Q);
    out.Q = Q;
    out.N.assign(r, {});
    for (int i = 0; i < r; ++i)
      if (!nums[i].empty()) out.N[i] = modp::mul(F, nums[i], modp::divmod(F, Q, dens[i]).first);
    out.points = static_cast<int>(cs[0].size());
    return true;
  }
}

}  // namespace detail

// d-th symmetric power. Throws if the certification fails (which would
// indicate an internal error, not a property of the input).
inline LinODE symmetric_power(const LinODE& L, int d, SymPowerStats* stats = nullptr) {
  if (d < 1) throw InvalidParameter("symmetric power degree must be >= 1");
  const int n = L.order();
  if (n < 1) throw InvalidParameter("operator of order 0");
  if (d == 1 || n == 1) {
    if (n == 1) {
      // (y^d)' = d a y^d  with y' = -a_0 y
      return LinODE({L.coeff(0).scaled(Rat(d))});
    }
    return L;
  }
  detail::MonomialBasis B(n, d);
  std::vector<QPoly> Pq = L.cleared();
  std::vector<ZPoly> Pz;
  for (const auto& q : Pq) {
    ZPoly z;
    for (const auto& c : q.coeffs()) z.push_back(c.get_num());
    Pz.push_back(std::move(z));
  }

  // Modular images until the reconstruction is stable.
  int order = -1;
  std::vector<modp::Crt> crt;
  int qdeg = -1;
  std::vector<int> ndeg;
  std::vector<Rat> candidate;
  bool have_candidate = false;
  int primes_used = 0, points = 0;
  auto flatten_sizes = [&]() {
    std::size_t s = qdeg + 1;
    for (int dg : ndeg) s += dg + 1;
    return s;
  };
  for (std::size_t pi = 0;; ++pi) {
    if (pi > 400) throw InvalidParameter("symmetric power reconstruction did not stabilize");
    const modp::u64 p = modp::prime(pi);
    modp::Field F{p};
    detail::ModularImage img;
    if (!detail::modular_image(F, B, Pz, -1, 1000 + pi, img)) continue;
    if (order < 0) order = img.order;
    if (img.order != order) {
      if (img.order > order) {  // earlier primes were unlucky
        order = img.order;
        crt.clear();
        qdeg = -1;
        have_candidate = false;
      }
      continue;
    }
    std::vector<int> nd;
    for (const auto& x : img.N) nd.push_back(modp::degree(x));
    const int qd = modp::degree(img.Q);
    if (qdeg >= 0 && (qd != qdeg || nd != ndeg)) {
      // Prefer the larger shape: unlucky primes lose degree.
      if (qd > qdeg) {
        crt.clear();
        have_candidate = false;
      } else {
        continue;
      }
    }
    qdeg = qd;
    ndeg = nd;
    std::vector<modp::u64> flat;
    for (int k = 0; k <= qdeg; ++k) flat.push_back(img.Q[k]);
    for (int i = 0; i < order; ++i)
      for (int k = 0; k <= ndeg[i]; ++k) flat.push_back(img.N[i][k]);
    if (have_candidate) {
      bool agree = true;
      for (std::size_t k = 0; k < flat.size() && agree; ++k) {
        modp::u64 v;
        agree = F.from_rat(candidate[k], v) && v == flat[k];
      }
      if (agree) {
        ++primes_used;
        points += img.points;
        break;
      }
    }
    if (crt.empty()) crt.assign(flatten_sizes(), modp::Crt{});
    for (std::size_t k = 0; k < flat.size(); ++k) crt[k].add(flat[k], p);
    ++primes_used;
    points += img.points;
    candidate.assign(flat.size(), Rat(0));
    have_candidate = true;
    for (std::size_t k = 0; k < flat.size() && have_candidate; ++k)
      have_candidate = modp::rat_reconstruct(crt[k].value, crt[k].modulus, candidate[k]);
  }

  // Unpack the candidate.
  std::size_t pos = 0;
  std::vector<Rat> qc(candidate.begin(), candidate.begin() + qdeg + 1);
  pos = qdeg + 1;
  QPoly Q(qc);
  std::vector<QPoly> N(order);
  for (int i = 0; i < order; ++i) {
    std::vector<Rat> c(candidate.begin() + pos, candidate.begin() + pos + ndeg[i] + 1);
    pos += ndeg[i] + 1;
    N[i] = QPoly(c);
  }

  // Exact certification of Q W_r + sum N_i D^(r-i) W_i = 0.
  Int lden = 1;
  for (const auto& c : Q.coeffs()) mpz_lcm(lden.get_mpz_t(), lden.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& q : N)
    for (const auto& c : q.coeffs()) mpz_lcm(lden.get_mpz_t(), lden.get_mpz_t(), c.get_den_mpz_t());
  auto to_z = [&](const QPoly& q) {
    ZPoly z;
    for (const auto& c : q.coeffs()) z.push_back(Rat(c * lden).get_num());
    return z;
  };
  std::vector<ZPoly> Nz;
  for (const auto& q : N) Nz.push_back(to_z(q));
  Nz.push_back(to_z(Q));  // coefficient of W_r
  const ZPoly& D = Pz[n];
  const ZPoly dD = detail::zp_derivative(D);
  const Int dl1 = detail::zp_l1(D);
  std::vector<Int> bound(B.size(), Int(0));
  {
    std::vector<ZPoly> W(B.size());
    W[B.of_power()] = {Int(1)};
    for (int k = 0; k <= order; ++k) {
      Int dpow;
      mpz_pow_ui(dpow.get_mpz_t(), dl1.get_mpz_t(), order - k);
      Int f = detail::zp_l1(Nz[k]) * dpow;
      for (int m = 0; m < B.size(); ++m) bound[m] += f * detail::zp_max_abs(W[m]);
      if (k < order) W = detail::zp_step(B, Pz, dD, W, k);
    }
  }
  Int bmax = 0;
  for (const auto& x : bound)
    if (x > bmax) bmax = x;
  const unsigned long bits = mpz_sizeinbase(bmax.get_mpz_t(), 2) + 2;
  {
    const Int Dv = detail::zp_eval_pow2(D, bits);
    std::vector<Int> acc(B.size(), Int(0));
    std::vector<ZPoly> W(B.size());
    W[B.of_power()] = {Int(1)};
    for (int k = 0; k <= order; ++k) {
      Int dpow;
      mpz_pow_ui(dpow.get_mpz_t(), Dv.get_mpz_t(), order - k);
      Int f = detail::zp_eval_pow2(Nz[k], bits) * dpow;
      if (sgn(f) != 0)
        for (int m = 0; m < B.size(); ++m)
          if (!W[m].empty()) acc[m] += f * detail::zp_eval_pow2(W[m], bits);
      if (k < order) W = detail::zp_step(B, Pz, dD, W, k);
    }
    for (const auto& a : acc)
      if (sgn(a) != 0) throw CertificationFailure("symmetric power relation failed exact check");
  }
  if (stats) {
    stats->order = order;
    stats->monomials = B.size();
    stats->primes = primes_used;
    stats->points = points;
    stats->certificate_bits = static_cast<long>(bits);
  }
  std::vector<RatFun> c;
  for (int i = 0; i < order; ++i) c.push_back(RatFun(N[i], Q));
  return LinODE(c);
}

// Decides whether the constant 1 solves S^d(L) without building S^d(L).
//
// With mu the vector of degree-d monomials in y, ..., y^(n-1) and mu' = B mu,
// a rational vector z with z' = B z and z_{y^d} = 1 gives f = <w_0, z> = 1
// and f^(k) = <w_k, z>, so every operator annihilating y^d for all solutions
// y annihilates 1. Such a z is searched modulo primes and then checked
// exactly. Conversely, when w_0, ..., w_{N-1} span (N the number of
// monomials), the relation w_N + sum c_k w_k = 0 is given by Cramer's rule,
// and a nonzero value of c_0 modulo p at a point where the matrix is
// invertible proves c_0 != 0, that is S^d(L)(1) != 0.
struct UnitCertificate {
  enum class Outcome { Annihilated, NotAnnihilated, Undecided };
  Outcome outcome = Outcome::Undecided;
  std::string method;
  std::vector<RatFun> z;  // indexed like the monomial basis, when Annihilated
  int monomials = 0;
};

namespace detail {

// Exact check of z' = B z for the monomial derivation of L.
inline bool is_horizontal(const MonomialBasis& B, const std::vector<QPoly>& P, const std::vector<RatFun>& z) {
  const int n = B.n;
  const RatFun D(P[n]);
  for (int m = 0; m < B.size(); ++m) {
    RatFun rhs;
    for (const auto& im : B.images[m]) {
      RatFun c = im.poly == n ? D : RatFun(P[im.poly]).scaled(Rat(-1));
      rhs = rhs + c.scaled(Rat(im.mult)) * z[im.target];
    }
    if (D * z[m].derivative() != rhs) return false;
  }
  return true;
}

}  // namespace detail

inline UnitCertificate unit_certificate(const LinODE& L, int d, int max_primes = 200) {
  using detail::u64;
  if (d < 1) throw InvalidParameter("symmetric power degree must be >= 1");
  const int n = L.order();
  UnitCertificate out;
  detail::MonomialBasis B(n, d);
  const int N = B.size();
  out.monomials = N;
  std::vector<QPoly> Pq = L.cleared();
  std::vector<ZPoly> Pz;
  for (const auto& q : Pq) {
    ZPoly z;
    for (const auto& c : q.coeffs()) z.push_back(c.get_num());
    Pz.push_back(std::move(z));
  }

  // Per-prime data: reduced W_0..W_N and rational images of z.
  std::vector<modp::Crt> crt;
  std::vector<int> shape;  // degrees of numerators and denominators
  std::vector<Rat> candidate;
  bool have_candidate = false;
  auto unpack = [&](const std::vector<Rat>& flat) {
    std::vector<RatFun> z(N);
    std::size_t pos = 0;
    for (int m = 0; m < N; ++m) {
      const int dn = shape[2 * m], dd = shape[2 * m + 1];
      std::vector<Rat> num(flat.begin() + pos, flat.begin() + pos + dn + 1);
      pos += dn + 1;
      std::vector<Rat> den(flat.begin() + pos, flat.begin() + pos + dd + 1);
      pos += dd + 1;
      z[m] = dn < 0 ? RatFun() : RatFun(QPoly(num), QPoly(den));
    }
    return z;
  };

  for (int pi = 0; pi < max_primes; ++pi) {
    const u64 p = modp::prime(pi);
    modp::Field F{p};
    std::vector<modp::Poly> P;
    for (const auto& z : Pz) P.push_back(reduce(F, z));
    if (modp::degree(P[n]) != static_cast<int>(Pz[n].size()) - 1) continue;
    const modp::Poly dD = modp::derivative(F, P[n]);
    std::vector<std::vector<modp::Poly>> Ws;
    {
      std::vector<modp::Poly> W(N);
      W[B.of_power()] = {1};
      Ws.push_back(std::move(W));
    }
    for (int k = 0; k < N; ++k) Ws.push_back(detail::mp_step(F, B, P, dD, Ws.back(), k));
    std::mt19937_64 rng(77 + pi);
    const u64 base = rng() % (F.p / 2);
    if (pi == 0 || shape.empty()) {
      // Below full order the relation is found by building S^d(L) itself;
      // a full rank modulo p certifies full order over Q.
      detail::IncrementalRank rank(F);
      u64 x = F.add(base, F.p / 3);
      u64 dx = modp::eval(F, P[n], x);
      if (dx == 0) continue;
      int rk = 0;
      for (int k = 0; k < N; ++k) {
        std::vector<u64> v(N);
        for (int m = 0; m < N; ++m) v[m] = modp::eval(F, Ws[k][m], x);
        if (rank.add(std::move(v))) ++rk;
      }
      if (rk < N && pi < 2) continue;  // retry once in case the node or prime is unlucky
      if (rk < N) {
        SymPowerStats st;
        LinODE S = symmetric_power(L, d, &st);
        out.outcome = S.coeff(0).is_zero() ? UnitCertificate::Outcome::Annihilated
                                           : UnitCertificate::Outcome::NotAnnihilated;
        out.method = "constant coefficient of S^d(L), order " + std::to_string(S.order());
        return out;
      }
    }

    // Solves at node x; returns false if the node is unusable.
    auto at = [&](u64 x, std::vector<u64>& zval, u64& c0) {
      u64 dx = modp::eval(F, P[n], x);
      if (dx == 0) return false;
      u64 dinv = F.inv(dx), dpow = 1;
      std::vector<std::vector<u64>> rows;
      for (int k = 0; k <= N; ++k) {
        std::vector<u64> v(N);
        for (int m = 0; m < N; ++m) v[m] = F.mul(modp::eval(F, Ws[k][m], x), dpow);
        dpow = F.mul(dpow, dinv);
        rows.push_back(std::move(v));
      }
      // c: columns w_0..w_{N-1}, rhs -w_N.
      std::vector<std::vector<u64>> cols(rows.begin(), rows.begin() + N);
      std::vector<u64> rhs(rows[N]);
      for (auto& e : rhs) e = F.neg(e);
      std::vector<u64> c;
      if (!detail::mp_solve(F, cols, rhs, c)) return false;
      c0 = c[0];
      // z: rows w_k . z = delta_k0, i.e. the transposed system.
      std::vector<std::vector<u64>> tcols(N, std::vector<u64>(N));
      for (int k = 0; k < N; ++k)
        for (int m = 0; m < N; ++m) tcols[m][k] = rows[k][m];
      std::vector<u64> e(N, 0);
      e[0] = 1;
      return detail::mp_solve(F, tcols, e, zval);
    };

    std::vector<std::vector<u64>> zs(N);
    std::size_t bad = 0;
    bool decided_fail = false;
    auto sample = [&](std::size_t count) {
      for (std::size_t i = zs[0].size(); i < count; ++i) {
        std::vector<u64> zv;
        u64 c0 = 0;
        if (!at(F.add(base, i), zv, c0)) return false;
        if (c0 != 0) {
          decided_fail = true;
          return false;
        }
        for (int m = 0; m < N; ++m) zs[m].push_back(zv[m]);
      }
      return true;
    };
    std::vector<u64> invs{0, 1};
    auto interpolate = [&](const std::vector<u64>& ys, std::size_t count) {
      while (invs.size() < count) invs.push_back(F.inv(invs.size()));
      std::vector<u64> c(ys.begin(), ys.begin() + count);
      for (std::size_t j = 1; j < count; ++j)
        for (std::size_t i = count - 1; i >= j; --i) c[i] = F.mul(F.sub(c[i], c[i - 1]), invs[j]);
      modp::Poly res;
      for (std::size_t i = count; i-- > 0;) {
        const u64 xi = F.add(base, i);
        modp::Poly nr(res.size() + 1, 0);
        for (std::size_t k = 0; k < res.size(); ++k) {
          nr[k + 1] = F.add(nr[k + 1], res[k]);
          nr[k] = F.sub(nr[k], F.mul(res[k], xi));
        }
        nr[0] = F.add(nr[0], c[i]);
        res = std::move(nr);
      }
      modp::trim(res);
      return res;
    };

    std::vector<modp::Poly> nums(N), dens(N);
    bool fitted = false;
    for (std::size_t count = 16; count <= 4096 && !fitted; count *= 2) {
      if (!sample(count + 4)) break;
      modp::Poly mod{1};
      for (std::size_t i = 0; i < count; ++i) mod = modp::mul(F, mod, modp::Poly{F.neg(F.add(base, i)), 1});
      bool ok = true;
      for (int m = 0; m < N && ok; ++m) {
        ok = modp::ratfun_reconstruct(F, mod, interpolate(zs[m], count), nums[m], dens[m]);
        if (ok && modp::degree(nums[m]) + modp::degree(dens[m]) + 4 > static_cast<int>(count)) ok = false;
        for (std::size_t j = count; ok && j < count + 4; ++j) {
          const u64 x = F.add(base, j);
          u64 dv = modp::eval(F, dens[m], x);
          if (dv == 0 || F.mul(modp::eval(F, nums[m], x), F.inv(dv)) != zs[m][j]) ok = false;
        }
      }
      fitted = ok;
    }
    if (decided_fail) {
      out.outcome = UnitCertificate::Outcome::NotAnnihilated;
      out.method = "nonzero c_0 modulo " + std::to_string(p);
      return out;
    }
    if (!fitted) {
      ++bad;
      if (zs[0].empty() && pi < 3) continue;  // unlucky prime or node
      out.method = "no rational horizontal vector found";
      return out;
    }

    std::vector<int> sh;
    std::vector<u64> flat;
    for (int m = 0; m < N; ++m) {
      sh.push_back(modp::degree(nums[m]));
      sh.push_back(nums[m].empty() ? -1 : modp::degree(dens[m]));
      for (u64 c : nums[m]) flat.push_back(c);
      if (!nums[m].empty())
        for (u64 c : dens[m]) flat.push_back(c);
    }
    if (!shape.empty() && sh != shape) {
      // A prime that changes the shape is unlucky unless it is the first.
      int a = 0, b = 0;
      for (int v : sh) a += v;
      for (int v : shape) b += v;
      if (a <= b) continue;
      crt.clear();
      have_candidate = false;
    }
    shape = sh;
    if (have_candidate) {
      bool agree = true;
      for (std::size_t k = 0; k < flat.size() && agree; ++k) {
        u64 v;
        agree = F.from_rat(candidate[k], v) && v == flat[k];
      }
      if (agree) {
        auto z = unpack(candidate);
        if (detail::is_horizontal(B, Pq, z) && z[B.of_power()] == RatFun(1)) {
          out.outcome = UnitCertificate::Outcome::Annihilated;
          out.method = "rational horizontal vector, checked exactly";
          out.z = std::move(z);
          return out;
        }
      }
    }
    if (crt.empty()) crt.assign(flat.size(), modp::Crt{});
    for (std::size_t k = 0; k < flat.size(); ++k) crt[k].add(flat[k], p);
    candidate.assign(flat.size(), Rat(0));
    have_candidate = true;
    for (std::size_t k = 0; k < flat.size() && have_candidate; ++k)
      have_candidate = modp::rat_reconstruct(crt[k].value, crt[k].modulus, candidate[k]);
  }
  out.method = "prime budget exhausted";
  return out;
}

}  // namespace lode_atlas
