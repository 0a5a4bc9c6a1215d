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

// The eight finite primitive subgroups of SL3(C) from their generator
// matrices, closure, projective order, (semi-)invariance and Molien series.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lode_atlas/cyclo.hpp"
#include "lode_atlas/matrix.hpp"
#include "lode_atlas/mpoly.hpp"

namespace lode_atlas {

enum class GroupId { G168, G168xC3, H216SL3, H72SL3, F36SL3, A6SL3, A5, A5xC3 };

inline const std::vector<GroupId>& all_groups() {
  static const std::vector<GroupId> ids = {GroupId::G168,   GroupId::G168xC3, GroupId::H216SL3,
                                           GroupId::H72SL3, GroupId::F36SL3,  GroupId::A6SL3,
                                           GroupId::A5,     GroupId::A5xC3};
  return ids;
}

inline std::string group_name(GroupId id) {
  switch (id) {
    case GroupId::G168: return "g168";
    case GroupId::G168xC3: return "g168xc3";
    case GroupId::H216SL3: return "h216";
    case GroupId::H72SL3: return "h72";
    case GroupId::F36SL3: return "f36";
    case GroupId::A6SL3: return "a6";
    case GroupId::A5: return "a5";
    case GroupId::A5xC3: return "a5xc3";
  }
  return "?";
}

inline std::optional<GroupId> parse_group(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  for (GroupId id : all_groups())
    if (group_name(id) == s) return id;
  if (s == "klein") return GroupId::G168;
  if (s == "valentiner") return GroupId::A6SL3;
  if (s == "hessian") return GroupId::H216SL3;
  return std::nullopt;
}

// Conductor of the cyclotomic field holding every generator entry.
inline int group_conductor(GroupId id) {
  switch (id) {
    case GroupId::G168: return 7;
    case GroupId::G168xC3: return 21;
    case GroupId::H216SL3:
    case GroupId::H72SL3:
    case GroupId::F36SL3: return 9;
    case GroupId::A5: return 5;
    case GroupId::A6SL3:
    case GroupId::A5xC3: return 15;
  }
  return 1;
}

using CMatrix = Matrix<Cyclo>;

inline CMatrix lift_matrix(const CMatrix& a, int m) {
  return a.map([m](const Cyclo& x) { return lift(x, m); });
}

inline Cyclo det3(const CMatrix& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

inline std::size_t matrix_hash(const CMatrix& a) {
  std::size_t h = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) h = h * 0x100000001B3ULL ^ a(i, j).hash();
  return h;
}

inline bool is_scalar_matrix(const CMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j && !a(i, j).is_zero()) return false;
      if (i == j && a(i, i) != a(0, 0)) return false;
    }
  return true;
}

struct MatGroup {
  GroupId id = GroupId::G168;
  int conductor = 1;
  std::vector<std::string> generator_names;
  std::vector<CMatrix> generators;
  std::vector<CMatrix> elements;  // empty until closure()
};

namespace detail {

inline CMatrix diag3(const Cyclo& a, const Cyclo& b, const Cyclo& c) {
  CMatrix m(3, 3, Cyclo(0));
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

inline CMatrix scaled(CMatrix m, const Cyclo& s) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = m(i, j) * s;
  return m;
}

}  // namespace detail

// Generators exactly as printed, over the group's conductor.
inline MatGroup printed_generators(GroupId id) {
  using detail::diag3;
  using detail::scaled;
  namespace k = constants;
  MatGroup g;
  g.id = id;
  const int m = group_conductor(id);
  g.conductor = m;
  auto add = [&](const std::string& name, const CMatrix& a) {
    g.generator_names.push_back(name);
    g.generators.push_back(lift_matrix(a, m));
  };
  const CMatrix T = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  switch (id) {
    case GroupId::G168:
    case GroupId::G168xC3: {
      Cyclo b = Cyclo::zeta(m, m / 7);
      Cyclo a = b.pow(4) - b.pow(3), bb = b.pow(2) - b.pow(5), c = b - b.pow(6);
      CMatrix R = {{a, bb, c}, {bb, c, a}, {c, a, bb}};
      add("R", scaled(R, k::sqrt_m7(m).inv()));
      add("S", diag3(b, b.pow(2), b.pow(4)));
      add("T", T);
      if (id == GroupId::G168xC3) {
        Cyclo w = k::omega(m);
        add("Z", diag3(w, w, w));
      }
      break;
    }
    case GroupId::H216SL3:
    case GroupId::H72SL3:
    case GroupId::F36SL3: {
      Cyclo eps = Cyclo::zeta(m), w = k::omega(m), w2 = w * w;
      Cyclo rho = (w - w2).inv();
      CMatrix V = scaled(CMatrix{{1, 1, 1}, {1, w, w2}, {1, w2, w}}, rho);
      CMatrix U = diag3(eps, eps, eps * w);
      add("S1", diag3(Cyclo(1), w, w2));
      add("T", T);
      add("V", V);
      if (id == GroupId::H216SL3) add("U", U);
      if (id == GroupId::H72SL3) add("UVU^-1", lift_matrix(U * V * *inverse(U), m));
      break;
    }
    case GroupId::A6SL3:
    case GroupId::A5:
    case GroupId::A5xC3: {
      Cyclo xi = Cyclo::zeta(m, m / 5);
      Cyclo s = xi.pow(3) + xi.pow(2), t = xi.pow(4) + xi;
      Cyclo inv5 = k::sqrt5(m).inv();
      add("E1", diag3(Cyclo(1), xi.pow(4), xi));
      add("E2", CMatrix{{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}});
      add("E3", scaled(CMatrix{{1, 2, 2}, {1, s, t}, {1, t, s}}, inv5));
      if (id == GroupId::A6SL3) {
        Cyclo l1 = (Cyclo(-1) + k::sqrt_m15(m)).scaled(make_rat(1, 4));
        Cyclo l2 = (Cyclo(-1) - k::sqrt_m15(m)).scaled(make_rat(1, 4));
        Cyclo two_l2 = l2.scaled(Rat(2));
        add("E4", scaled(CMatrix{{1, two_l2, two_l2}, {l1, s, t}, {l1, t, s}}, inv5));
      }
      if (id == GroupId::A5xC3) {
        Cyclo w = k::omega(m);
        add("Z", diag3(w, w, w));
      }
      break;
    }
  }
  return g;
}

// Change of coordinates M such that the catalog invariants, written in the
// variables X, are fixed by M^-1 g M for every printed generator g. Identity
// except for two groups whose printed invariants live in another frame: the
// Klein quartic needs X1 <-> X3 reversed, and the Valentiner sextic needs
// (X1, X2, X3) -> (X3, X1/a, X2/a) with a = (sqrt(-15) - 3)/6.
inline CMatrix invariant_frame(GroupId id) {
  const int m = group_conductor(id);
  CMatrix M = CMatrix::identity(3);
  switch (id) {
    case GroupId::G168:
    case GroupId::G168xC3:
      M = CMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
      break;
    case GroupId::A6SL3: {
      Cyclo a = (constants::sqrt_m15(m) - Cyclo(3)).scaled(make_rat(1, 6));
      M = CMatrix(3, 3, Cyclo(0));
      M(1, 0) = a.inv();
      M(2, 1) = a.inv();
      M(0, 2) = Cyclo(1);
      break;
    }
    default:
      break;
  }
  return lift_matrix(M, m);
}

// Printed generators expressed in the frame of the catalog invariants.
inline MatGroup catalog_generators(GroupId id) {
  MatGroup g = printed_generators(id);
  const CMatrix M = invariant_frame(id);
  const CMatrix Mi = *inverse(M);
  for (auto& x : g.generators) x = lift_matrix(Mi * x * M, g.conductor);
  return g;
}

// Breadth-first enumeration of the generated group.
inline MatGroup closure(MatGroup g, std::size_t bound = 4000) {
  const int m = g.conductor;
  std::vector<CMatrix> elems;
  std::unordered_multimap<std::size_t, std::size_t> index;
  auto insert = [&](CMatrix a) -> bool {
    std::size_t h = matrix_hash(a);
    auto range = index.equal_range(h);
    for (auto it = range.first; it != range.second; ++it)
      if (elems[it->second] == a) return false;
    index.emplace(h, elems.size());
    elems.push_back(std::move(a));
    if (elems.size() > bound)
      throw ClosureBoundExceeded("more than " + std::to_string(bound) + " elements");
    return true;
  };
  insert(lift_matrix(CMatrix::identity(3), m));
  std::size_t frontier_begin = 0;
  while (frontier_begin < elems.size()) {
    std::size_t frontier_end = elems.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i)
      for (const auto& gen : g.generators) insert(lift_matrix(elems[i] * gen, m));
    frontier_begin = frontier_end;
  }
  g.elements = std::move(elems);
  return g;
}

inline std::size_t scalar_count(const MatGroup& g) {
  std::size_t n = 0;
  for (const auto& e : g.elements) n += is_scalar_matrix(e) ? 1 : 0;
  return n;
}

inline std::size_t projective_order(const MatGroup& g) {
  if (g.elements.empty()) throw InvalidParameter("projective_order needs closure");
  return g.elements.size() / scalar_count(g);
}

// Row vector times matrix: the point action matching X_j -> sum_i X_i g_ij.
inline std::vector<Cyclo> act(const std::vector<Cyclo>& x, const CMatrix& g) {
  std::vector<Cyclo> y(g.cols(), Cyclo(0));
  for (std::size_t j = 0; j < g.cols(); ++j)
    for (std::size_t i = 0; i < g.rows(); ++i)
      if (!x[i].is_zero() && !g(i, j).is_zero()) y[j] += x[i] * g(i, j);
  return y;
}

namespace detail {

inline std::vector<MPoly> homogeneous_parts(const MPoly& F) {
  std::map<int, std::vector<MPoly::Term>> parts;
  for (const auto& t : F.terms()) parts[mono::total(t.first)].push_back(t);
  std::vector<MPoly> out;
  for (auto& kv : parts) out.push_back(MPoly::from_terms(F.nvars(), kv.second));
  return out;
}

// Evaluation points (1, i, j) with i + j <= d (principal lattice, unisolvent
// for forms of degree d in three variables).
inline std::vector<std::vector<Cyclo>> lattice(int d) {
  std::vector<std::vector<Cyclo>> pts;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) pts.push_back({Cyclo(1), Cyclo(i), Cyclo(j)});
  return pts;
}

// Elements of Z[zeta_m] in the power basis; used to evaluate forms at
// g-translated lattice points without rational normalization.
class ZRing {
 public:
  using Elt = std::vector<Int>;
  explicit ZRing(int m) : m_(m), ctx_(cyclo_context(m)) {}
  int phi() const { return ctx_.phi; }
  Elt zero() const { return Elt(ctx_.phi); }
  Elt mul(const Elt& a, const Elt& b) const {
    const int phi = ctx_.phi;
    std::vector<Int> raw(2 * phi - 1);
    for (int i = 0; i < phi; ++i) {
      if (sgn(a[i]) == 0) continue;
      for (int j = 0; j < phi; ++j)
        if (sgn(b[j]) != 0) mpz_addmul(raw[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    Elt out(raw.begin(), raw.begin() + phi);
    for (int k = phi; k < 2 * phi - 1; ++k) {
      if (sgn(raw[k]) == 0) continue;
      const auto& pw = ctx_.powers[k];
      for (int i = 0; i < phi; ++i)
        if (pw[i]) out[i] += raw[k] * pw[i];
    }
    return out;
  }

 private:
  int m_;
  const CycloContext& ctx_;
};

// chi with F o g = chi F for a homogeneous nonzero F, or nullopt. Exact: both
// sides are forms of degree d and are compared on a unisolvent set. The
// matrix and the form are cleared of denominators so that all arithmetic runs
// in Z[zeta].
inline std::optional<Cyclo> character_of(const MPoly& F, const CMatrix& g) {
  if (F.nvars() != 3) throw ShapeMismatch("character test expects three variables");
  const int d = F.degree();
  int m = 1;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m = std::lcm(m, g(i, j).conductor());
  for (const auto& t : F.terms()) m = std::lcm(m, t.second.conductor());
  ZRing ring(m);
  const int phi = ring.phi();
  auto integral = [&](const Cyclo& x, const Int& scale) {
    ZRing::Elt e(phi);
    Cyclo y = lift(x, m);
    for (int i = 0; i < phi; ++i) {
      Rat v = y.coeffs()[i] * scale;
      if (v.get_den() != 1) throw ShapeMismatch("denominator not cleared");
      e[i] = v.get_num();
    }
    return e;
  };
  Int gden = 1, fden = 1;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (const auto& c : g(i, j).coeffs()) mpz_lcm(gden.get_mpz_t(), gden.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& t : F.terms())
    for (const auto& c : t.second.coeffs()) mpz_lcm(fden.get_mpz_t(), fden.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::vector<ZRing::Elt>> G(3, std::vector<ZRing::Elt>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) G[i][j] = integral(g(i, j), gden);
  std::vector<std::pair<mono::Key, ZRing::Elt>> terms;
  int maxe[3] = {0, 0, 0};
  for (const auto& t : F.terms()) {
    terms.emplace_back(t.first, integral(t.second, fden));
    for (int v = 0; v < 3; ++v) maxe[v] = std::max(maxe[v], mono::exponent(t.first, v));
  }
  auto eval = [&](const std::vector<ZRing::Elt>& y) {
    std::vector<std::vector<ZRing::Elt>> pw(3);
    for (int v = 0; v < 3; ++v) {
      ZRing::Elt one(phi);
      one[0] = 1;
      pw[v].push_back(one);
      for (int e = 1; e <= maxe[v]; ++e) pw[v].push_back(ring.mul(pw[v].back(), y[v]));
    }
    ZRing::Elt sum(phi);
    for (const auto& [key, c] : terms) {
      ZRing::Elt mon = ring.mul(pw[0][mono::exponent(key, 0)], pw[1][mono::exponent(key, 1)]);
      mon = ring.mul(ring.mul(mon, pw[2][mono::exponent(key, 2)]), c);
      for (int i = 0; i < phi; ++i) sum[i] += mon[i];
    }
    return sum;
  };
  // lhs_k = gden^d fden F(x_k g), rhs_k = gden^d fden F(x_k); equal up to chi.
  Int gd;
  mpz_pow_ui(gd.get_mpz_t(), gden.get_mpz_t(), static_cast<unsigned long>(d));
  std::optional<std::pair<ZRing::Elt, ZRing::Elt>> ref;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      const long x[3] = {1, i, j};
      std::vector<ZRing::Elt> y(3, ring.zero()), xr(3, ring.zero());
      for (int c = 0; c < 3; ++c) {
        xr[c][0] = x[c];
        for (int r = 0; r < 3; ++r)
          if (x[r])
            for (int k = 0; k < phi; ++k) y[c][k] += G[r][c][k] * x[r];
      }
      ZRing::Elt lhs = eval(y), rhs = eval(xr);
      for (auto& v : rhs) v *= gd;
      const bool rz = std::all_of(rhs.begin(), rhs.end(), [](const Int& v) { return sgn(v) == 0; });
      const bool lz = std::all_of(lhs.begin(), lhs.end(), [](const Int& v) { return sgn(v) == 0; });
      if (!ref) {
        if (rz) {
          if (!lz) return std::nullopt;
          continue;
        }
        ref.emplace(lhs, rhs);
        continue;
      }
      // lhs / rhs == ref.lhs / ref.rhs  <=>  lhs * ref.rhs == ref.lhs * rhs
      if (ring.mul(lhs, ref->second) != ring.mul(ref->first, rhs)) return std::nullopt;
    }
  if (!ref) return std::nullopt;
  return Cyclo(m, std::vector<Rat>(ref->first.begin(), ref->first.end())) /
         Cyclo(m, std::vector<Rat>(ref->second.begin(), ref->second.end()));
}

}  // namespace detail

inline std::vector<Cyclo> semi_character(const MPoly& F, const MatGroup& g) {
  if (!F.is_homogeneous()) throw NotSemiInvariant("polynomial is not homogeneous");
  std::vector<Cyclo> out;
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    if (F.is_zero_poly()) {
      out.push_back(Cyclo(1));
      continue;
    }
    auto chi = detail::character_of(F, g.generators[i]);
    if (!chi) throw NotSemiInvariant("image under " + g.generator_names[i] +
                                     " is not a multiple of the polynomial");
    out.push_back(*chi);
  }
  return out;
}

inline bool is_invariant(const MPoly& F, const MatGroup& g) {
  for (const auto& part : detail::homogeneous_parts(F))
    for (const auto& gen : g.generators) {
      auto chi = detail::character_of(part, gen);
      if (!chi || *chi != Cyclo(1)) return false;
    }
  return true;
}

inline bool is_invariant(const QMPoly& F, const MatGroup& g) { return is_invariant(to_cyclo(F), g); }

// Dimensions of the degree-d invariant spaces, d = 0..up_to.
inline std::vector<long> molien(const MatGroup& g, int up_to) {
  if (g.elements.empty()) throw InvalidParameter("molien needs closure");
  struct Entry {
    Cyclo e1, e2, e3;
    long count;
  };
  std::unordered_multimap<std::size_t, std::size_t> idx;
  std::vector<Entry> classes;
  for (const auto& a : g.elements) {
    Cyclo e1 = a(0, 0) + a(1, 1) + a(2, 2);
    Cyclo e2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
               a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    Cyclo e3 = det3(a);
    std::size_t h = e1.hash() * 31 + e2.hash() * 7 + e3.hash();
    bool found = false;
    auto range = idx.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
      Entry& en = classes[it->second];
      if (en.e1 == e1 && en.e2 == e2 && en.e3 == e3) {
        ++en.count;
        found = true;
        break;
      }
    }
    if (!found) {
      idx.emplace(h, classes.size());
      classes.push_back({e1, e2, e3, 1});
    }
  }
  // 1/det(I - u g) = sum s_k u^k with s_k = e1 s_{k-1} - e2 s_{k-2} + e3 s_{k-3}.
  std::vector<Cyclo> total(up_to + 1, Cyclo(0));
  for (const auto& en : classes) {
    std::vector<Cyclo> s(up_to + 1, Cyclo(0));
    for (int k = 0; k <= up_to; ++k) {
      Cyclo v = k == 0 ? Cyclo(1) : Cyclo(0);
      if (k >= 1) v += en.e1 * s[k - 1];
      if (k >= 2) v -= en.e2 * s[k - 2];
      if (k >= 3) v += en.e3 * s[k - 3];
      s[k] = v;
      total[k] += v.scaled(Rat(en.count));
    }
  }
  std::vector<long> out;
  const Rat order(static_cast<long>(g.elements.size()));
  for (const auto& v : total) {
    if (!v.is_rational()) throw CatalogIntegrityError("Molien coefficient is not rational");
    Rat q = v.rational_part() / order;
    if (!is_integer(q) || sgn(q) < 0)
      throw CatalogIntegrityError("Molien coefficient is not a non-negative integer");
    out.push_back(q.get_num().get_si());
  }
  return out;
}

}  // namespace lode_atlas
