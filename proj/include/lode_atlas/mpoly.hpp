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

// Sparse multivariate polynomials. Monomials are packed into 64-bit keys
// [total | e1 | e2 | e3 | e4 | e5] with 10 bits per field, so comparing keys is
// the graded lexicographic order and multiplying monomials is key addition.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lode_atlas/cyclo.hpp"
#include "lode_atlas/matrix.hpp"

namespace lode_atlas {

namespace mono {

using Key = std::uint64_t;
inline constexpr int kMaxVars = 5;
inline constexpr int kBits = 10;
inline constexpr std::uint64_t kMask = (1u << kBits) - 1;
inline constexpr int kMaxDegree = (1 << kBits) - 1;

inline int shift(int var) { return kBits * (kMaxVars - 1 - var); }

inline Key pack(const std::vector<int>& e) {
  if (static_cast<int>(e.size()) > kMaxVars) throw ShapeMismatch("at most 5 variables");
  Key k = 0;
  int total = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0) throw ShapeMismatch("negative exponent");
    total += e[i];
    if (e[i] > kMaxDegree || total > kMaxDegree) throw ShapeMismatch("degree exceeds 1023");
    k |= static_cast<Key>(e[i]) << shift(static_cast<int>(i));
  }
  return k | (static_cast<Key>(total) << (kBits * kMaxVars));
}

inline int exponent(Key k, int var) { return static_cast<int>((k >> shift(var)) & kMask); }
inline int total(Key k) { return static_cast<int>(k >> (kBits * kMaxVars)); }

inline std::vector<int> unpack(Key k, int nvars) {
  std::vector<int> e(nvars);
  for (int i = 0; i < nvars; ++i) e[i] = exponent(k, i);
  return e;
}

inline Key unit(int var) {
  return (Key(1) << shift(var)) | (Key(1) << (kBits * kMaxVars));
}

inline Key product(Key a, Key b) {
  if (total(a) + total(b) > kMaxDegree) throw ShapeMismatch("degree exceeds 1023");
  return a + b;
}

}  // namespace mono

template <class K>
class basic_mpoly {
 public:
  using coeff_type = K;
  using Term = std::pair<mono::Key, K>;

  explicit basic_mpoly(int nvars = 3) : nvars_(nvars) { check_nvars(); }
  basic_mpoly(int nvars, const K& c) : nvars_(nvars) {
    check_nvars();
    if (!is_zero(c)) terms_.emplace_back(mono::Key(0), c);
  }

  static basic_mpoly variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw ShapeMismatch("variable index out of range");
    basic_mpoly p(nvars);
    p.terms_.emplace_back(mono::unit(i), K(1));
    return p;
  }
  static basic_mpoly monomial(const std::vector<int>& exps, const K& c) {
    basic_mpoly p(static_cast<int>(exps.size()));
    if (!is_zero(c)) p.terms_.emplace_back(mono::pack(exps), c);
    return p;
  }
  // From unsorted (key, coeff) pairs; merges duplicates and drops zeros.
  static basic_mpoly from_terms(int nvars, std::vector<Term> terms) {
    basic_mpoly p(nvars);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first > b.first; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
      } else {
        if (!p.terms_.empty() && is_zero(p.terms_.back().second)) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && is_zero(p.terms_.back().second)) p.terms_.pop_back();
    return p;
  }

  int nvars() const { return nvars_; }
  // Terms in decreasing graded lexicographic order.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero_poly() const { return terms_.empty(); }

  int degree() const { return terms_.empty() ? -1 : mono::total(terms_.front().first); }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (mono::total(t.first) != degree()) return false;
    return true;
  }

  K coefficient(const std::vector<int>& exps) const {
    mono::Key k = mono::pack(exps);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, mono::Key key) { return t.first > key; });
    if (it != terms_.end() && it->first == k) return it->second;
    return K(0);
  }

  basic_mpoly operator-() const {
    basic_mpoly r(*this);
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend basic_mpoly operator+(const basic_mpoly& a, const basic_mpoly& b) {
    return merge(a, b, false);
  }
  friend basic_mpoly operator-(const basic_mpoly& a, const basic_mpoly& b) {
    return merge(a, b, true);
  }
  basic_mpoly& operator+=(const basic_mpoly& b) { return *this = *this + b; }
  basic_mpoly& operator-=(const basic_mpoly& b) { return *this = *this - b; }

  friend basic_mpoly operator*(const basic_mpoly& a, const basic_mpoly& b) {
    a.check_same(b);
    if (a.terms_.empty() || b.terms_.empty()) return basic_mpoly(a.nvars_);
    if (a.terms_.size() == 1 && a.terms_[0].first == 0) return b.scaled(a.terms_[0].second);
    if (b.terms_.size() == 1 && b.terms_[0].first == 0) return a.scaled(b.terms_[0].second);
    if (mono::total(a.terms_.front().first) + mono::total(b.terms_.front().first) >
        mono::kMaxDegree)
      throw ShapeMismatch("degree exceeds 1023");
    std::unordered_map<mono::Key, K> acc;
    acc.reserve(std::min<std::size_t>(a.terms_.size() * b.terms_.size(), 1u << 20));
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) {
        auto [it, fresh] = acc.try_emplace(x.first + y.first);
        if (fresh)
          it->second = x.second * y.second;
        else
          it->second += x.second * y.second;
      }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& kv : acc)
      if (!is_zero(kv.second)) terms.emplace_back(kv.first, std::move(kv.second));
    std::sort(terms.begin(), terms.end(),
              [](const Term& u, const Term& v) { return u.first > v.first; });
    basic_mpoly r(a.nvars_);
    r.terms_ = std::move(terms);
    return r;
  }
  basic_mpoly& operator*=(const basic_mpoly& b) { return *this = *this * b; }

  basic_mpoly scaled(const K& c) const {
    basic_mpoly r(nvars_);
    if (is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      K v = t.second * c;
      if (!is_zero(v)) r.terms_.emplace_back(t.first, std::move(v));
    }
    return r;
  }

  basic_mpoly pow(int e) const {
    basic_mpoly r(nvars_, K(1)), b(*this);
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // Formal partial derivative in X_{var+1}.
  basic_mpoly diff(int var) const {
    if (var < 0 || var >= nvars_) throw ShapeMismatch("variable index out of range");
    basic_mpoly r(nvars_);
    const mono::Key u = mono::unit(var);
    for (const auto& t : terms_) {
      int e = mono::exponent(t.first, var);
      if (e == 0) continue;
      r.terms_.emplace_back(t.first - u, t.second * K(static_cast<long>(e)));
    }
    // Removing one from a fixed variable keeps the relative order.
    return r;
  }

  template <class V>
  V eval(const std::vector<V>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw ShapeMismatch("point length");
    std::vector<std::vector<V>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      int maxe = 0;
      for (const auto& t : terms_) maxe = std::max(maxe, mono::exponent(t.first, i));
      powers[i].reserve(maxe + 1);
      powers[i].push_back(V(1));
      for (int e = 1; e <= maxe; ++e) powers[i].push_back(powers[i].back() * point[i]);
    }
    V sum(0);
    for (const auto& t : terms_) {
      V term = V(t.second);
      for (int i = 0; i < nvars_; ++i) {
        int e = mono::exponent(t.first, i);
        if (e) term = term * powers[i][e];
      }
      sum += term;
    }
    return sum;
  }

  template <class F>
  auto map_coeffs(F&& f) const {
    using R = decltype(f(std::declval<const K&>()));
    std::vector<std::pair<mono::Key, R>> out;
    for (const auto& t : terms_) out.emplace_back(t.first, f(t.second));
    return basic_mpoly<R>::from_terms(nvars_, std::move(out));
  }

  friend bool operator==(const basic_mpoly& a, const basic_mpoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const basic_mpoly& a, const basic_mpoly& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const basic_mpoly& p) { return os << p.str(); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      std::string c = coeff_string(t.second);
      std::string m;
      for (int i = 0; i < nvars_; ++i) {
        int e = mono::exponent(t.first, i);
        if (e == 0) continue;
        m += "*X" + std::to_string(i + 1);
        if (e > 1) m += "^" + std::to_string(e);
      }
      s += (s.empty() ? "" : " + ") + ("(" + c + ")" + m);
    }
    return s;
  }

 private:
  static std::string coeff_string(const Rat& r) { return to_string(r); }
  static std::string coeff_string(const Cyclo& c) { return c.str(); }

  void check_nvars() const {
    if (nvars_ < 1 || nvars_ > mono::kMaxVars) throw ShapeMismatch("nvars must be in 1..5");
  }
  void check_same(const basic_mpoly& b) const {
    if (nvars_ != b.nvars_) throw ShapeMismatch("polynomials in different variable counts");
  }

  static basic_mpoly merge(const basic_mpoly& a, const basic_mpoly& b, bool negate) {
    a.check_same(b);
    basic_mpoly r(a.nvars_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first > b.terms_[j].first)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].first > a.terms_[i].first) {
        r.terms_.emplace_back(b.terms_[j].first, negate ? K(-b.terms_[j].second) : b.terms_[j].second);
        ++j;
      } else {
        K v = negate ? K(a.terms_[i].second - b.terms_[j].second)
                     : K(a.terms_[i].second + b.terms_[j].second);
        if (!is_zero(v)) r.terms_.emplace_back(a.terms_[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return r;
  }

  int nvars_;
  std::vector<Term> terms_;
};

using MPoly = basic_mpoly<Cyclo>;
using QMPoly = basic_mpoly<Rat>;

inline MPoly to_cyclo(const QMPoly& p, int conductor = 1) {
  return p.map_coeffs([conductor](const Rat& r) { return Cyclo::rational(r, conductor); });
}

// Rational polynomial from one whose coefficients are all rational; throws
// ShapeMismatch otherwise.
inline QMPoly to_rational(const MPoly& p) {
  return p.map_coeffs([](const Cyclo& c) {
    if (!c.is_rational()) throw ShapeMismatch("polynomial has irrational coefficients");
    return c.rational_part();
  });
}

template <class K>
basic_mpoly<K> operator*(const K& c, const basic_mpoly<K>& p) {
  return p.scaled(c);
}

// F with X_j replaced by sum_i X_i g(i, j).
inline MPoly substitute_linear(const MPoly& F, const Matrix<Cyclo>& g) {
  const int n = F.nvars();
  if (static_cast<int>(g.rows()) != n || static_cast<int>(g.cols()) != n)
    throw ShapeMismatch("substitution matrix size does not match nvars");
  std::vector<MPoly> lin(n, MPoly(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (!g(i, j).is_zero()) lin[j] += MPoly::variable(n, i).scaled(g(i, j));
  // Powers of the images, grown on demand.
  std::vector<std::vector<MPoly>> pw(n);
  for (int j = 0; j < n; ++j) pw[j].push_back(MPoly(n, Cyclo(1)));
  auto power = [&](int j, int e) -> const MPoly& {
    while (static_cast<int>(pw[j].size()) <= e) pw[j].push_back(pw[j].back() * lin[j]);
    return pw[j][e];
  };
  MPoly out(n);
  for (const auto& t : F.terms()) {
    MPoly term(n, t.second);
    for (int j = 0; j < n; ++j) {
      int e = mono::exponent(t.first, j);
      if (e) term = term * power(j, e);
    }
    out += term;
  }
  return out;
}

// Laplace expansion along the first row; intended for sizes up to 4.
template <class K>
basic_mpoly<K> poly_det(const std::vector<std::vector<basic_mpoly<K>>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw ShapeMismatch("empty determinant");
  for (const auto& row : m)
    if (row.size() != n) throw ShapeMismatch("determinant of a non-square matrix");
  const int nv = m[0][0].nvars();
  if (n == 1) return m[0][0];
  basic_mpoly<K> sum(nv);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero_poly()) continue;
    std::vector<std::vector<basic_mpoly<K>>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<basic_mpoly<K>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    basic_mpoly<K> term = m[0][c] * poly_det(minor);
    sum = (c % 2 == 0) ? sum + term : sum - term;
  }
  return sum;
}

template <class K>
std::vector<std::vector<basic_mpoly<K>>> hessian(const basic_mpoly<K>& F) {
  const int n = F.nvars();
  std::vector<std::vector<basic_mpoly<K>>> h(n);
  for (int i = 0; i < n; ++i) {
    basic_mpoly<K> di = F.diff(i);
    for (int j = 0; j < n; ++j) h[i].push_back(di.diff(j));
  }
  return h;
}

}  // namespace lode_atlas
