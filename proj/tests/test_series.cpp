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

#include <gtest/gtest.h>

#include <random>

#include "lode_atlas/serialize.hpp"
#include "lode_atlas/series.hpp"

namespace la = lode_atlas;
using la::Int;
using la::LinODE;
using la::Rat;
using la::RatFun;
using la::TruncSeries;

namespace {

RatFun rf(const std::string& s) { return la::parse_ratfun(s); }

Rat factorial(int k) {
  Int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rat(f);
}

}  // namespace

TEST(Series, ExpandGeometric) {
  TruncSeries s = la::expand(rf("1/(1-t)"), Rat(0), 8);
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(s.coeff(k), 1);
  TruncSeries p = la::expand(rf("1/t"), Rat(2), 4);  // 1/(2+s) = sum (-1)^k s^k / 2^(k+1)
  EXPECT_EQ(p.coeff(3), Rat(-1, 16));
  EXPECT_THROW(la::expand(rf("1/t"), Rat(0), 3), la::SingularExpansionPoint);
}

TEST(Series, PowerOfAUnit) {
  TruncSeries s = la::expand(rf("1+t"), Rat(0), 10);
  EXPECT_EQ(s.pow(Rat(1, 2)) * s.pow(Rat(1, 2)), s);
  EXPECT_EQ(s.pow(Rat(-1)), la::expand(rf("1/(1+t)"), Rat(0), 10));
}

TEST(Series, HypergeometricOracle) {
  // 2F1(1, 1; 2 | t) = -log(1-t)/t.
  TruncSeries s = la::hypergeometric_series({Rat(1), Rat(1)}, {Rat(2)}, 12);
  for (int k = 0; k <= 12; ++k) EXPECT_EQ(s.coeff(k), Rat(1, k + 1));
  // 3F2 coefficient 2 from the Pochhammer definition.
  TruncSeries h = la::hyp3f2_series(Rat(-1, 42), Rat(5, 42), Rat(17, 42), Rat(1, 3), Rat(2, 3), 3);
  Rat want = Rat(-1, 42) * Rat(41, 42) * Rat(5, 42) * Rat(47, 42) * Rat(17, 42) * Rat(59, 42) /
             (Rat(1, 3) * Rat(4, 3) * Rat(2, 3) * Rat(5, 3) * 2);
  EXPECT_EQ(h.coeff(2), want);
  EXPECT_THROW(la::hypergeometric_series({Rat(1), Rat(1)}, {Rat(-2)}, 4), la::InvalidParameter);
}

TEST(Series, HypergeometricSeriesSolvesItsOperator) {
  std::vector<Rat> a = {Rat(17, 36), Rat(2, 9), Rat(-1, 36)}, b = {Rat(1, 3), Rat(2, 3)};
  TruncSeries y = la::hypergeometric_series(a, b, 40);
  EXPECT_TRUE(la::residual(la::hypergeometric_operator(a, b), y).is_zero());
  // A different lower parameter leaves a residual.
  EXPECT_FALSE(la::residual(la::hypergeometric_operator(a, {Rat(1, 3), Rat(3, 4)}), y).is_zero());
}

TEST(Series, OrdinaryPointSolutions) {
  // D^2 - 1: cosh and sinh at 0.
  LinODE L({RatFun(-1), RatFun()});
  auto s = la::series_solutions(L, Rat(0), 9);
  ASSERT_EQ(s.size(), 2u);
  for (int k = 0; k <= 9; ++k) {
    EXPECT_EQ(s[0].coeff(k), k % 2 == 0 ? 1 / factorial(k) : Rat(0));
    EXPECT_EQ(s[1].coeff(k), k % 2 == 1 ? 1 / factorial(k) : Rat(0));
  }
  // Solutions away from 0 with polynomial coefficients: t^2 y'' - 2y = 0 at 1.
  LinODE E({rf("-2/t^2"), RatFun()});
  auto e = la::series_solutions(E, Rat(1), 12);
  for (const auto& y : e) EXPECT_TRUE(la::residual(E, y).is_zero());
  EXPECT_THROW(la::series_solutions(E, Rat(0), 5), la::SingularExpansionPoint);
}

TEST(Series, MonomialsMatchProducts) {
  LinODE L = la::hypergeometric_operator({Rat(-1, 42), Rat(5, 42), Rat(17, 42)}, {Rat(1, 3), Rat(2, 3)});
  auto s = la::series_solutions(L, Rat(2), 20);
  auto m = la::solution_monomials(L, Rat(2), 20, 2);
  ASSERT_EQ(m.size(), 6u);
  EXPECT_EQ(m[0], s[0] * s[0]);
  EXPECT_EQ(m[1], s[0] * s[1]);
  EXPECT_EQ(m[5], s[2] * s[2]);
}

TEST(Series, KroneckerProductMatchesSchoolbook) {
  std::mt19937_64 rng(20260301);
  std::uniform_int_distribution<long> c(-1000000, 1000000);
  std::vector<Int> a(37), b(23);
  for (auto& x : a) x = c(rng);
  for (auto& x : b) x = c(rng);
  a[3] = Int("-123456789012345678901234567890");
  // Truncated to the shorter length.
  std::vector<Int> want(b.size(), Int(0));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; i + j < b.size(); ++j) want[i + j] += a[i] * b[j];
  EXPECT_EQ(la::detail::kronecker_mul(a, b), want);
}

TEST(Series, SpanMembershipOracle) {
  // e^t, e^{2t} and their sum; t^3 is not in the span.
  TruncSeries e1 = la::series_solutions(LinODE({RatFun(-1)}), Rat(0), 12)[0];
  TruncSeries e2 = la::series_solutions(LinODE({RatFun(-2)}), Rat(0), 12)[0];
  auto r = la::span_membership({e1, e2}, e1.scaled(Rat(3)) - e2.scaled(Rat(1, 7)));
  ASSERT_TRUE(r.member);
  EXPECT_EQ(r.combination, (std::vector<Rat>{Rat(3), Rat(-1, 7)}));
  EXPECT_FALSE(la::span_membership({e1, e2}, la::expand(la::QPoly::monomial(3), Rat(0), 12)).member);
  EXPECT_THROW(la::span_membership({e1, e2}, e1.truncated(3)), la::ShapeMismatch);
  EXPECT_THROW(la::span_membership({e1.truncated(3), e2.truncated(3)}, e1.truncated(3)), la::InconclusiveTruncation);
}

TEST(Series, MonomialSpanMembershipAgreesWithExplicitProducts) {
  LinODE L = la::hypergeometric_operator({Rat(-1, 42), Rat(5, 42), Rat(17, 42)}, {Rat(1, 3), Rat(2, 3)});
  auto m = la::solution_monomials(L, Rat(2), 30, 2);
  TruncSeries cand = m[1].scaled(Rat(5)) + m[4].scaled(Rat(-2, 3));
  EXPECT_TRUE(la::monomial_span_membership(L, 2, cand).member);
  EXPECT_FALSE(la::monomial_span_membership(L, 2, la::expand(la::QPoly::monomial(7), Rat(2), 30)).member);
}

TEST(SeriesProperty, SpanMembershipIsBasisIndependent) {
  std::mt19937_64 rng(20260302);
  std::uniform_int_distribution<int> c(-4, 4);
  LinODE L = la::hypergeometric_operator({Rat(1, 4), Rat(1, 3), Rat(1, 2)}, {Rat(1, 5), Rat(3, 5)});
  auto base = la::series_solutions(L, Rat(-1), 24);
  for (int trial = 0; trial < 20; ++trial) {
    // Random upper unitriangular change of basis.
    std::vector<TruncSeries> b2 = base;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) b2[i] = b2[i] + base[j].scaled(Rat(c(rng)));
    std::vector<Rat> w = {Rat(c(rng)), la::make_rat(c(rng), 3), Rat(c(rng))};
    TruncSeries cand = base[0].scaled(w[0]) + base[1].scaled(w[1]) + base[2].scaled(w[2]);
    auto r1 = la::span_membership(base, cand), r2 = la::span_membership(b2, cand);
    ASSERT_TRUE(r1.member);
    ASSERT_TRUE(r2.member);
    EXPECT_EQ(r1.rank, r2.rank);
    EXPECT_EQ(r1.combination, w);
    TruncSeries rebuilt = b2[0].scaled(r2.combination[0]) + b2[1].scaled(r2.combination[1]) +
                          b2[2].scaled(r2.combination[2]);
    EXPECT_EQ(rebuilt, cand);
    // A perturbation outside the span is rejected in both bases.
    TruncSeries off = cand + la::expand(la::QPoly::monomial(5 + trial % 7), Rat(-1), 24);
    EXPECT_FALSE(la::span_membership(base, off).member);
    EXPECT_FALSE(la::span_membership(b2, off).member);
  }
}
