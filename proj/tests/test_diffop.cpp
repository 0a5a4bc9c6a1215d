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

#include "lode_atlas/linode.hpp"
#include "lode_atlas/serialize.hpp"

namespace la = lode_atlas;
using la::LinODE;
using la::QPoly;
using la::Rat;
using la::RatFun;

namespace {

RatFun rf(const std::string& s) { return la::parse_ratfun(s); }

LinODE op(std::initializer_list<const char*> coeffs) {
  std::vector<RatFun> c;
  for (const char* s : coeffs) c.push_back(rf(s));
  return LinODE(c);
}

// Small random polynomial of degree <= deg, never zero.
QPoly random_qpoly(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<int> c(-3, 3);
  for (;;) {
    std::vector<Rat> co(deg + 1);
    for (auto& x : co) x = c(rng);
    QPoly p(co);
    if (!p.is_zero()) return p;
  }
}

RatFun random_ratfun(std::mt19937_64& rng) {
  QPoly d = random_qpoly(rng, 1);
  while (d.degree() < 1) d = random_qpoly(rng, 1);
  return RatFun(random_qpoly(rng, 2), d);
}

LinODE random_op(std::mt19937_64& rng, int n) {
  std::vector<RatFun> c;
  for (int i = 0; i < n; ++i) c.push_back(random_ratfun(rng));
  return LinODE(c);
}

// Derivative of a gauge vector: x = sum v_j y^(j) modulo L.
std::vector<RatFun> d_vec(const LinODE& L, const std::vector<RatFun>& v) {
  const int n = L.order();
  std::vector<RatFun> w(n);
  for (int j = 0; j < n; ++j) {
    w[j] = v[j].derivative();
    if (j > 0) w[j] += v[j - 1];
    w[j] -= v[n - 1] * L.coeff(j);
  }
  return w;
}

// Gauge vector of x2 = sum g_k x1^(k) with x1 = sum f_j y^(j).
std::vector<RatFun> compose(const LinODE& L, const std::vector<RatFun>& f, const std::vector<RatFun>& g) {
  std::vector<RatFun> out(L.order()), cur = f;
  cur.resize(L.order());
  for (const auto& gk : g) {
    for (int j = 0; j < L.order(); ++j) out[j] += gk * cur[j];
    cur = d_vec(L, cur);
  }
  return out;
}

}  // namespace

TEST(LinODE, ApplyKillsKnownSolution) {
  // y = t^2 solves t^2 y'' - 2 y = 0.
  LinODE L = op({"-2/t^2", "0"});
  EXPECT_TRUE(L.apply(rf("t^2")).is_zero());
  EXPECT_FALSE(L.apply(rf("t")).is_zero());
}

TEST(LinODE, GaussOperator) {
  // y'' + (c - (a+b+1) t)/(t(1-t)) y' - ab/(t(1-t)) y for 2F1(a, b; c).
  LinODE L = la::hypergeometric_operator({Rat(1, 2), Rat(1, 3)}, {Rat(3, 4)});
  EXPECT_EQ(L.coeff(1), rf("(3/4 - 11/6*t)/(t*(1-t))"));
  EXPECT_EQ(L.coeff(0), rf("-1/6/(t*(1-t))"));
}

TEST(LinODE, PullbackOracle) {
  // Solutions 1, t of D^2 become 1, t^2: D^2 - D/t.
  EXPECT_EQ(la::pullback(op({"0", "0"}), rf("t^2")), op({"0", "-1/t"}));
  EXPECT_THROW(la::pullback(op({"0", "0"}), rf("5")), la::ConstantPullback);
}

TEST(LinODE, ExpProductOracle) {
  // Constants become t^(1/2): D - 1/(2t).
  EXPECT_EQ(la::exp_product(op({"0"}), rf("t"), 2), op({"-1/(2*t)"}));
  EXPECT_THROW(la::exp_product(op({"0"}), RatFun(), 2), la::ZeroScale);
  EXPECT_THROW(la::exp_product(op({"0"}), rf("t"), 0), la::InvalidParameter);
}

TEST(LinODE, GaugeOracle) {
  // x = t y' on the solutions 1, t^3 of D^2 - 2/t D gives 0 and 3t^3, so the
  // map is singular; x = y + t y' gives 1, 4t^3: again D^2 - 2/t D.
  LinODE L = op({"0", "-2/t"});
  EXPECT_THROW(la::gauge_transform(L, {RatFun(), rf("t")}), la::DegenerateGauge);
  EXPECT_EQ(la::gauge_transform(L, {RatFun(1), rf("t")}), L);
  EXPECT_THROW(la::gauge_transform(L, {RatFun(1), RatFun(1), RatFun(1)}), la::ShapeMismatch);
}

TEST(LinODE, SerializationRoundTrip) {
  LinODE L = la::hypergeometric_operator({Rat(-1, 42), Rat(5, 42), Rat(17, 42)}, {Rat(1, 3), Rat(2, 3)});
  EXPECT_EQ(la::linode_from_json(la::to_json(L)), L);
  EXPECT_THROW(la::linode_from_json(la::json::parse(R"({"order":2,"coeffs":["t"]})")), la::ParseError);
}

TEST(LinODEProperty, GaugeCompositionAndInverse) {
  std::mt19937_64 rng(20260201);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 2;
    LinODE L = random_op(rng, n);
    std::vector<RatFun> f = {RatFun(1), random_ratfun(rng)}, g = {random_ratfun(rng), RatFun(1)};
    LinODE L1 = la::gauge_transform(L, f);
    EXPECT_EQ(la::gauge_transform(L1, g), la::gauge_transform(L, compose(L, f, g)));

    // Inverse: solve sum_k r_k D^k(f) = e_0 modulo L.
    la::Matrix<RatFun> M(n, n, RatFun());
    std::vector<RatFun> cur = f;
    cur.resize(n);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) M(j, k) = cur[j];
      cur = d_vec(L, cur);
    }
    std::vector<RatFun> e0(n);
    e0[0] = RatFun(1);
    auto r = la::solve(M, e0);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(la::gauge_transform(L1, *r), L);
  }
}

TEST(LinODEProperty, PullbackComposes) {
  std::mt19937_64 rng(20260202);
  for (int trial = 0; trial < 10; ++trial) {
    LinODE L = random_op(rng, 2);
    RatFun h1 = RatFun(random_qpoly(rng, 2)) + RatFun::t(), h2 = rf("t^2") + RatFun(random_qpoly(rng, 1));
    if (h1.derivative().is_zero()) continue;
    EXPECT_EQ(la::pullback(la::pullback(L, h1), h2), la::pullback(L, h1.compose(h2)));
  }
}

TEST(LinODEProperty, ExpProductIsAGroupAction) {
  std::mt19937_64 rng(20260203);
  for (int trial = 0; trial < 12; ++trial) {
    LinODE L = random_op(rng, 2 + trial % 2);
    RatFun f = random_ratfun(rng), g = random_ratfun(rng);
    const long lam = 1 + trial % 5;
    EXPECT_EQ(la::exp_product(la::exp_product(L, f, lam), f, -lam), L);
    EXPECT_EQ(la::exp_product(la::exp_product(L, f, lam), g, lam), la::exp_product(L, f * g, lam));
    EXPECT_EQ(la::exp_product(L, f.pow(2), 2 * lam), la::exp_product(L, f, lam));
  }
}
