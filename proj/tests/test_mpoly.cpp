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

#include "lode_atlas/expr.hpp"
#include "lode_atlas/groups.hpp"
#include "lode_atlas/mpoly.hpp"

namespace la = lode_atlas;
using la::Cyclo;
using la::MPoly;
using la::QMPoly;
using la::Rat;

namespace {

MPoly poly(const std::string& s, int conductor = 1) {
  return la::to_cyclo(la::expr::parse_polynomial<QMPoly>(s), conductor);
}

const char* kF4 = "X1^3*X2+X2^3*X3+X3^3*X1";

MPoly random_poly(std::mt19937_64& rng, int conductor, int max_deg, int nterms) {
  std::uniform_int_distribution<int> e(0, max_deg), c(-5, 5);
  MPoly out(3);
  for (int i = 0; i < nterms; ++i) {
    std::vector<int> ex = {e(rng), e(rng), e(rng)};
    std::vector<Rat> co(la::euler_phi(conductor));
    for (auto& x : co) x = c(rng);
    out = out + MPoly::monomial(ex, Cyclo(conductor, co));
  }
  return out;
}

}  // namespace

TEST(MPoly, Derivatives) {
  EXPECT_EQ(poly("X1^3*X2").diff(0), poly("3*X1^2*X2"));
  EXPECT_EQ(poly("X1^2+X2*X3").diff(1), poly("X3"));
  MPoly F4 = poly(kF4);
  MPoly euler(3);
  for (int i = 0; i < 3; ++i) euler = euler + MPoly::variable(3, i) * F4.diff(i);
  EXPECT_EQ(euler, F4.scaled(Cyclo(4)));
}

TEST(MPoly, Evaluation) {
  MPoly F4 = poly(kF4);
  EXPECT_EQ(F4.eval<Cyclo>({Cyclo(1), Cyclo(0), Cyclo(0)}), Cyclo(0));
  EXPECT_EQ(F4.eval<Cyclo>({Cyclo(1), Cyclo(1), Cyclo(1)}), Cyclo(3));
  EXPECT_EQ(poly("X1^2+X2*X3").eval<Cyclo>({Cyclo(1), Cyclo(0), Cyclo(0)}), Cyclo(1));
}

TEST(MPoly, Determinants) {
  std::vector<std::vector<MPoly>> id(3, std::vector<MPoly>(3, MPoly(3)));
  std::vector<std::vector<MPoly>> dg = id;
  for (int i = 0; i < 3; ++i) {
    id[i][i] = poly("1");
    dg[i][i] = MPoly::variable(3, i);
  }
  EXPECT_EQ(la::poly_det(id), poly("1"));
  EXPECT_EQ(la::poly_det(dg), poly("X1*X2*X3"));
}

// The Hessian entries of the quartic written out by hand, evaluated pointwise.
TEST(MPoly, HessianAgainstHandExpansion) {
  QMPoly F4 = la::expr::parse_polynomial<QMPoly>(kF4);
  QMPoly H = la::poly_det(la::hessian(F4));
  for (auto [x, y, z] : {std::tuple<long, long, long>{1, 1, 1}, {1, 2, 3}, {-2, 5, 7}}) {
    Rat m[3][3] = {{6 * x * y, 3 * x * x, 3 * z * z},
                   {3 * x * x, 6 * y * z, 3 * y * y},
                   {3 * z * z, 3 * y * y, 6 * z * x}};
    Rat det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
              m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    EXPECT_EQ(H.eval<Rat>({Rat(x), Rat(y), Rat(z)}), det);
  }
  EXPECT_EQ(H.eval<Rat>({Rat(1), Rat(1), Rat(1)}), Rat(108));
}

TEST(MPoly, LinearSubstitution) {
  MPoly F4 = poly(kF4, 7);
  auto id = la::lift_matrix(la::CMatrix::identity(3), 7);
  EXPECT_EQ(la::substitute_linear(F4, id), F4);
  auto g = la::catalog_generators(la::GroupId::G168);
  EXPECT_EQ(la::substitute_linear(F4, g.generators[1]), F4);  // S
  auto printed = la::printed_generators(la::GroupId::G168);
  // X_j -> sum_i X_i g_ij sends X1 to the variable whose row holds the 1 in
  // column 1 of T.
  const auto& T = printed.generators[2];
  EXPECT_EQ(la::substitute_linear(poly("X1"), T), poly("X3"));
  EXPECT_EQ(la::substitute_linear(poly("X1"), *la::inverse(T)), poly("X2"));
}

TEST(MPoly, GradedOrderAndHomogeneity) {
  MPoly p = poly("X3 + X1^2 + X1*X2");
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(la::mono::total(p.terms().front().first), 2);
  EXPECT_FALSE(p.is_homogeneous());
  EXPECT_TRUE(poly(kF4).is_homogeneous());
  EXPECT_EQ(poly(kF4).degree(), 4);
}

TEST(MPolyProperty, SubstitutionIsCompatibleWithProducts) {
  std::mt19937_64 rng(20260102);
  for (auto id : {la::GroupId::G168, la::GroupId::H216SL3, la::GroupId::A6SL3}) {
    auto g = la::catalog_generators(id);
    const int m = g.conductor;
    for (int trial = 0; trial < 6; ++trial) {
      MPoly F = random_poly(rng, 1, 3, 4), G = random_poly(rng, 1, 2, 3);
      F = la::to_cyclo(la::to_rational(F), m);
      G = la::to_cyclo(la::to_rational(G), m);
      const auto& a = g.generators[trial % g.generators.size()];
      const auto& b = g.generators[(trial + 1) % g.generators.size()];
      EXPECT_EQ(la::substitute_linear(F, la::lift_matrix(a * b, m)),
                la::substitute_linear(la::substitute_linear(F, b), a));
      EXPECT_EQ(la::substitute_linear(F * G, a),
                la::substitute_linear(F, a) * la::substitute_linear(G, a));
    }
  }
}

TEST(MPolyProperty, EvaluationIsARingMap) {
  std::mt19937_64 rng(20260103);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    MPoly F = random_poly(rng, 5, 4, 5), G = random_poly(rng, 5, 4, 5);
    std::vector<Cyclo> pt;
    for (int i = 0; i < 3; ++i)
      pt.push_back(Cyclo(5, {Rat(c(rng)), Rat(c(rng)), Rat(c(rng)), Rat(c(rng))}));
    EXPECT_EQ((F * G).eval(pt), F.eval(pt) * G.eval(pt));
    EXPECT_EQ((F + G).eval(pt), F.eval(pt) + G.eval(pt));
  }
}

TEST(MPolyProperty, EulerIdentity) {
  std::mt19937_64 rng(20260104);
  std::uniform_int_distribution<int> c(-6, 6);
  const auto group = la::catalog_generators(la::GroupId::G168);
  for (int trial = 0; trial < 40; ++trial) {
    const int deg = 1 + trial % 9;
    std::uniform_int_distribution<int> e(0, deg);
    MPoly F(3);
    for (int k = 0; k < 6; ++k) {
      const int a = e(rng), b = std::uniform_int_distribution<int>(0, deg - a)(rng);
      std::vector<Rat> co(6);
      for (auto& x : co) x = c(rng);
      F = F + MPoly::monomial({a, b, deg - a - b}, Cyclo(7, co));
    }
    MPoly euler(3);
    for (int i = 0; i < 3; ++i) euler = euler + MPoly::variable(3, i) * F.diff(i);
    EXPECT_EQ(euler, F.scaled(Cyclo(deg)));
    // The linear action keeps homogeneity.
    const auto& g = group.generators[trial % group.generators.size()];
    MPoly Fg = la::substitute_linear(F, g);
    EXPECT_TRUE(Fg.is_zero_poly() || Fg.is_homogeneous());
  }
}
