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

#include "lode_atlas/cyclo.hpp"

namespace la = lode_atlas;
using la::Cyclo;
using la::Rat;

namespace {

Cyclo random_cyclo(std::mt19937_64& rng, int m, bool nonzero = false) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  for (;;) {
    std::vector<Rat> c(la::euler_phi(m));
    for (auto& x : c) x = la::make_rat(num(rng), den(rng));
    Cyclo out(m, c);
    if (!nonzero || !out.is_zero()) return out;
  }
}

}  // namespace

TEST(Rat, ParseAndCanonicalForm) {
  EXPECT_EQ(la::parse_rat("6/-4"), la::make_rat(-3, 2));
  EXPECT_EQ(la::to_string(la::parse_rat("-85/74088")), "-85/74088");
  EXPECT_EQ(la::parse_rat("0/5").get_den(), 1);
  EXPECT_THROW(la::parse_rat("1/0"), la::DivisionByZero);
  EXPECT_THROW(la::parse_rat("x"), la::ParseError);
}

TEST(Rat, ParameterProducts) {
  // (a1 a2 a3) for each standard equation, against the printed constants.
  auto r = [](long p, long q) { return la::make_rat(p, q); };
  EXPECT_EQ(r(-1, 42) * r(5, 42) * r(17, 42), r(-85, 74088));
  EXPECT_EQ(r(-1, 60) * r(11, 60) * r(7, 12), r(-77, 43200));
  EXPECT_EQ(r(17, 36) * r(2, 9) * r(-1, 36), r(-17, 5832));
  EXPECT_EQ(r(-1, 30) * r(1, 6) * r(11, 30), r(-11, 5400));
  EXPECT_EQ(r(-1, 12) * r(1, 6) * r(5, 12), r(-5, 864));
}

TEST(Cyclo, CyclotomicPolynomials) {
  EXPECT_EQ(la::cyclotomic_polynomial(9), (std::vector<long>{1, 0, 0, 1, 0, 0, 1}));
  EXPECT_EQ(la::cyclotomic_polynomial(15),
            (std::vector<long>{1, -1, 0, 1, -1, 1, 0, -1, 1}));
  for (int m : {3, 5, 7, 9, 15, 21, 36}) {
    auto phi = la::cyclotomic_polynomial(m);
    Cyclo z = Cyclo::zeta(m), acc = Cyclo::rational(0, m);
    for (std::size_t k = 0; k < phi.size(); ++k) acc += z.pow(k).scaled(Rat(phi[k]));
    EXPECT_TRUE(acc.is_zero()) << m;
    EXPECT_EQ(z.pow(m), Cyclo::rational(1, m));
  }
}

TEST(Cyclo, RootOfUnityArithmetic) {
  Cyclo z5 = Cyclo::zeta(5);
  EXPECT_EQ(z5 * z5.pow(4), Cyclo::rational(1, 5));
  Cyclo z7 = Cyclo::zeta(7);
  EXPECT_EQ(z7.inv(), z7.pow(6));
  EXPECT_EQ(Cyclo(2).inv(), Cyclo(la::make_rat(1, 2)));
  EXPECT_THROW(Cyclo::rational(0, 7).inv(), la::DivisionByZero);
  EXPECT_THROW(z5 + z7, la::ConductorMismatch);
}

TEST(Cyclo, CatalogConstants) {
  namespace k = la::constants;
  EXPECT_EQ(k::sqrt5() * k::sqrt5(), Cyclo(5));
  EXPECT_EQ(k::sqrt_m7() * k::sqrt_m7(), Cyclo(-7));
  EXPECT_EQ(k::sqrt_m3() * k::sqrt_m3(), Cyclo(-3));
  EXPECT_EQ(k::sqrt_m15() * k::sqrt_m15(), Cyclo(-15));
  EXPECT_EQ(k::sqrt3() * k::sqrt3(), Cyclo(3));
  // inv(t - s) = (t - s)/5
  EXPECT_EQ(k::sqrt5().inv(), k::sqrt5().scaled(la::make_rat(1, 5)));
  // lambda_1 lambda_2 = 1, lambda_1 + lambda_2 = -1/2
  Cyclo l1 = (Cyclo(-1) + k::sqrt_m15()).scaled(la::make_rat(1, 4));
  Cyclo l2 = (Cyclo(-1) - k::sqrt_m15()).scaled(la::make_rat(1, 4));
  EXPECT_EQ(l1 * l2, Cyclo(1));
  EXPECT_EQ(l1 + l2, Cyclo(la::make_rat(-1, 2)));
}

TEST(Cyclo, Embedding) {
  EXPECT_EQ(Cyclo::rational(3, 5).embed(15), Cyclo::rational(3, 15));
  EXPECT_EQ(Cyclo::zeta(5).embed(15).coeffs(), Cyclo::zeta(15, 3).coeffs());
  Cyclo eps = Cyclo::zeta(9);
  EXPECT_EQ(la::constants::omega().embed(9).coeffs(), (Cyclo(-1) - eps.pow(3)).coeffs());
  EXPECT_EQ(la::constants::omega(9), Cyclo(-1) - eps.pow(3));
  EXPECT_THROW(Cyclo::zeta(5).embed(21), la::EmbedUnsupported);
  // Ring map on basis products.
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      Cyclo a = Cyclo::zeta(5, j), b = Cyclo::zeta(5, k);
      EXPECT_EQ((a * b).embed(15), a.embed(15) * b.embed(15));
    }
}

TEST(CycloProperty, FieldAxioms) {
  std::mt19937_64 rng(20260101);
  const int conductors[] = {3, 5, 7, 9, 15, 21};
  for (int i = 0; i < 1000; ++i) {
    int m = conductors[i % 6];
    Cyclo x = random_cyclo(rng, m, true), y = random_cyclo(rng, m), z = random_cyclo(rng, m);
    ASSERT_EQ((x + y) + z, x + (y + z));
    ASSERT_EQ(x * (y + z), x * y + x * z);
    ASSERT_EQ((x * y) * x.inv(), y);
  }
}
