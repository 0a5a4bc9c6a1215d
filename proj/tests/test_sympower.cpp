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

#include "lode_atlas/catalog.hpp"
#include "lode_atlas/serialize.hpp"
#include "lode_atlas/series.hpp"
#include "lode_atlas/sympower.hpp"

namespace la = lode_atlas;
using la::LinODE;
using la::Rat;
using la::RatFun;

namespace {

RatFun rf(const std::string& s) { return la::parse_ratfun(s); }

LinODE klein() {
  return la::hypergeometric_operator({Rat(-1, 42), Rat(5, 42), Rat(17, 42)}, {Rat(1, 3), Rat(2, 3)});
}

}  // namespace

TEST(SymPower, FirstPowerIsTheOperator) {
  EXPECT_EQ(la::symmetric_power(klein(), 1), klein());
  EXPECT_THROW(la::symmetric_power(klein(), 0), la::InvalidParameter);
}

TEST(SymPower, SecondPowerOfAReducedSecondOrderOperator) {
  // y'' + q y = 0 has symmetric square y''' + 4 q y' + 2 q' y = 0.
  RatFun q = rf("(3*t^2-1)/(16*t^2*(t-1)^2)");
  LinODE S = la::symmetric_power(LinODE({q, RatFun()}), 2);
  EXPECT_EQ(S, LinODE({q.derivative().scaled(Rat(2)), q.scaled(Rat(4)), RatFun()}));
}

TEST(SymPower, PowersOfTheTrivialOperator) {
  // Products of 1 and t are the polynomials of degree <= d.
  for (int d = 1; d <= 6; ++d) {
    LinODE S = la::symmetric_power(LinODE({RatFun(), RatFun()}), d);
    EXPECT_EQ(S.order(), d + 1);
    for (const auto& c : S.coeffs()) EXPECT_TRUE(c.is_zero());
  }
}

TEST(SymPower, ProductsOfSolutionsAreSolutions) {
  LinODE L = klein();
  for (int d = 2; d <= 3; ++d) {
    la::SymPowerStats st;
    LinODE S = la::symmetric_power(L, d, &st);
    EXPECT_EQ(S.order(), d == 2 ? 6 : 10);
    EXPECT_EQ(st.monomials, S.order());
    for (const auto& m : la::solution_monomials(L, Rat(2), 40, d)) EXPECT_TRUE(la::residual(S, m).is_zero());
  }
}

TEST(SymPower, SquareOfTheGaussOperatorIsTheIcosahedralStandard) {
  LinODE f21 = la::hypergeometric_operator({Rat(-1, 60), Rat(11, 60)}, {Rat(2, 3)});
  EXPECT_EQ(la::symmetric_power(f21, 2), la::standard_equation(la::GroupId::A5).op);
}

TEST(UnitCertificate, Oracles) {
  using O = la::UnitCertificate::Outcome;
  // 1 solves D^2 but not D^2 + 1/t.
  EXPECT_EQ(la::unit_certificate(LinODE({RatFun(), RatFun()}), 1).outcome, O::Annihilated);
  EXPECT_EQ(la::unit_certificate(LinODE({rf("1/t"), RatFun()}), 1).outcome, O::NotAnnihilated);
  // F6 is constant on the Klein standard equation; F4 is not.
  EXPECT_EQ(la::unit_certificate(klein(), 6).outcome, O::Annihilated);
  EXPECT_EQ(la::unit_certificate(klein(), 4).outcome, O::NotAnnihilated);
}
