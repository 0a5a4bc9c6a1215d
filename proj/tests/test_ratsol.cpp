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

#include <algorithm>
#include <random>

#include "lode_atlas/ratsol.hpp"
#include "lode_atlas/serialize.hpp"
#include "lode_atlas/sympower.hpp"

namespace la = lode_atlas;
using la::LinODE;
using la::QPoly;
using la::Rat;
using la::RatFun;

namespace {

RatFun rf(const std::string& s) { return la::parse_ratfun(s); }

std::vector<Rat> sorted(std::vector<Rat> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Whether every element of want lies in the span of the basis, by exact rank
// of the values at sample points.
bool spans(const std::vector<RatFun>& basis, const std::vector<RatFun>& want) {
  for (const auto& w : want) {
    std::vector<RatFun> all = basis;
    all.push_back(w);
    // Sample at integer points: exact linear algebra over Q.
    const int m = static_cast<int>(all.size());
    la::Matrix<Rat> M(3 * m, m, Rat(0));
    int row = 0;
    for (int x = 7; row < 3 * m; ++x) {
      bool ok = true;
      for (const auto& f : all) ok = ok && f.den().eval(Rat(x)) != 0;
      if (!ok) continue;
      for (int j = 0; j < m; ++j) M(row, j) = all[j].num().eval(Rat(x)) / all[j].den().eval(Rat(x));
      ++row;
    }
    if (static_cast<int>(la::row_reduce(M).size()) != m - 1) return false;
  }
  return true;
}

}  // namespace

TEST(Indicial, HypergeometricExponents) {
  LinODE L = la::hypergeometric_operator({Rat(-1, 42), Rat(5, 42), Rat(17, 42)}, {Rat(1, 3), Rat(2, 3)});
  EXPECT_EQ(sorted(la::indicial_roots(L, Rat(0))), (std::vector<Rat>{Rat(0), Rat(1, 3), Rat(2, 3)}));
  EXPECT_EQ(sorted(la::indicial_roots_at_infinity(L)), (std::vector<Rat>{Rat(-1, 42), Rat(5, 42), Rat(17, 42)}));
  // At t = 1 the exponents are 0, 1 and (sum of b) - (sum of a) = 1/2.
  EXPECT_EQ(sorted(la::indicial_roots(L, Rat(1))), (std::vector<Rat>{Rat(0), Rat(1, 2), Rat(1)}));
}

TEST(RationalSolutions, PolesAtRationalPoints) {
  // D^2 twisted by g = 1/(t^2 (t-1)^3): solutions g and t g.
  RatFun g = rf("1/(t^2*(t-1)^3)");
  auto sols = la::rational_solutions(la::exp_product(LinODE({RatFun(), RatFun()}), g, 1));
  ASSERT_EQ(sols.size(), 2u);
  EXPECT_TRUE(spans(sols, {g, g * RatFun::t()}));
}

TEST(RationalSolutions, PolesAtAnIrreducibleQuadratic) {
  RatFun g = rf("1/(t^2+1)^2");
  LinODE L = la::exp_product(LinODE({RatFun(), RatFun()}), g, 1);
  auto sols = la::rational_solutions(L);
  ASSERT_EQ(sols.size(), 2u);
  EXPECT_TRUE(spans(sols, {g, g * RatFun::t()}));
}

TEST(RationalSolutions, NoneWhereNoneExist) {
  EXPECT_TRUE(la::rational_solutions(LinODE({rf("-t"), RatFun()})).empty());  // Airy
  EXPECT_TRUE(la::rational_solutions(LinODE({rf("-1/(4*t^2)"), RatFun()})).empty());
  LinODE klein = la::hypergeometric_operator({Rat(-1, 42), Rat(5, 42), Rat(17, 42)}, {Rat(1, 3), Rat(2, 3)});
  EXPECT_TRUE(la::rational_solutions(klein).empty());
}

TEST(RationalSolutions, SolutionsAreVerifiedAndNormalized) {
  LinODE L = la::exp_product(LinODE({RatFun(), RatFun(), RatFun()}), rf("(t-3)/(t^2*(2*t+1))"), 1);
  auto sols = la::rational_solutions(L);
  EXPECT_EQ(sols.size(), 3u);
  for (const auto& s : sols) EXPECT_TRUE(L.apply(s).is_zero());
}

TEST(RatsolProperty, SymmetricPowerDimensionIsGaugeInvariant) {
  std::mt19937_64 rng(20260401);
  std::uniform_int_distribution<int> c(-3, 3);
  // Solutions 1, t (all symmetric powers rational) and t^(1/2), t^(3/2)
  // (only even powers rational).
  const LinODE bases[] = {LinODE({RatFun(), RatFun()}), la::exp_product(LinODE({RatFun(), RatFun()}), RatFun::t(), 2)};
  for (int trial = 0; trial < 6; ++trial) {
    const LinODE& L = bases[trial % 2];
    RatFun f1(QPoly({Rat(c(rng)), Rat(c(rng))}), QPoly({Rat(1 + trial), Rat(1)}));
    LinODE G = la::gauge_transform(L, {RatFun(1), f1});
    for (int d = 1; d <= 4; ++d) {
      const std::size_t a = la::rational_solutions(la::symmetric_power(L, d)).size();
      const std::size_t b = la::rational_solutions(la::symmetric_power(G, d)).size();
      EXPECT_EQ(a, b) << "d = " << d << ", trial " << trial;
      const std::size_t want = trial % 2 == 0 ? d + 1 : (d % 2 == 0 ? d + 1 : 0);
      EXPECT_EQ(a, want) << "d = " << d;
    }
  }
}
