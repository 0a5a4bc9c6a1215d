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
#include <map>
#include <random>

#include "lode_atlas/expr.hpp"
#include "lode_atlas/groups.hpp"

namespace la = lode_atlas;
using la::CMatrix;
using la::Cyclo;
using la::GroupId;
using la::MPoly;
using la::QMPoly;

namespace {

MPoly poly(const std::string& s, int conductor) {
  return la::to_cyclo(la::expr::parse_polynomial<QMPoly>(s), conductor);
}

const la::MatGroup& closed(GroupId id) {
  static std::map<GroupId, la::MatGroup> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, la::closure(la::catalog_generators(id))).first;
  return it->second;
}

// Dimension of the degree-d invariant forms, from the kernel of
// (F -> F o g - F) over all generators on the monomial basis.
long invariant_dimension(const la::MatGroup& g, int d) {
  std::vector<std::vector<int>> basis;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) basis.push_back({a, b, d - a - b});
  const std::size_t n = basis.size();
  la::Matrix<Cyclo> sys(n * g.generators.size(), n, Cyclo(0));
  for (std::size_t col = 0; col < n; ++col) {
    MPoly mono = MPoly::monomial(basis[col], Cyclo::rational(1, g.conductor));
    for (std::size_t k = 0; k < g.generators.size(); ++k) {
      MPoly diff = la::substitute_linear(mono, g.generators[k]) - mono;
      for (std::size_t row = 0; row < n; ++row)
        sys(k * n + row, col) = la::lift(diff.coefficient(basis[row]), g.conductor);
    }
  }
  return static_cast<long>(n - la::row_reduce(sys).size());
}

}  // namespace

TEST(Groups, GeneratorsAreInSL3) {
  for (GroupId id : la::all_groups()) {
    for (const auto& gen : la::printed_generators(id).generators)
      EXPECT_EQ(la::det3(gen), Cyclo(1)) << la::group_name(id);
    for (const auto& gen : la::catalog_generators(id).generators)
      EXPECT_EQ(la::det3(gen), Cyclo(1)) << la::group_name(id);
  }
  EXPECT_EQ(la::catalog_generators(GroupId::G168).generators.size(), 3u);
}

TEST(Groups, KleinSHasOrderSeven) {
  const CMatrix S = la::printed_generators(GroupId::G168).generators[1];
  CMatrix p = S;
  const CMatrix id = la::lift_matrix(CMatrix::identity(3), 7);
  for (int k = 1; k < 7; ++k) {
    EXPECT_FALSE(p == id) << k;
    p = la::lift_matrix(p * S, 7);
  }
  EXPECT_TRUE(p == id);
}

TEST(Groups, Orders) {
  const std::map<GroupId, std::pair<std::size_t, std::size_t>> expect = {
      {GroupId::G168, {168, 168}},   {GroupId::G168xC3, {504, 168}}, {GroupId::H216SL3, {648, 216}},
      {GroupId::H72SL3, {216, 72}},  {GroupId::F36SL3, {108, 36}},   {GroupId::A6SL3, {1080, 360}},
      {GroupId::A5, {60, 60}},       {GroupId::A5xC3, {180, 60}}};
  for (const auto& [id, ord] : expect) {
    const auto& g = closed(id);
    EXPECT_EQ(g.elements.size(), ord.first) << la::group_name(id);
    EXPECT_EQ(la::projective_order(g), ord.second) << la::group_name(id);
  }
}

TEST(Groups, PrintedAndCatalogFramesGiveTheSameOrders) {
  for (GroupId id : {GroupId::G168, GroupId::A6SL3})
    EXPECT_EQ(la::closure(la::printed_generators(id)).elements.size(), closed(id).elements.size());
}

TEST(Groups, ClosureBound) {
  EXPECT_THROW(la::closure(la::catalog_generators(GroupId::A6SL3), 100), la::ClosureBoundExceeded);
}

TEST(Groups, Invariance) {
  auto g168 = la::catalog_generators(GroupId::G168);
  EXPECT_TRUE(la::is_invariant(poly("X1^3*X2+X2^3*X3+X3^3*X1", 7), g168));
  EXPECT_FALSE(la::is_invariant(poly("X1", 7), g168));
  EXPECT_TRUE(la::is_invariant(poly("(X1^3-X2^3)*(X1^3-X3^3)*(X2^3-X3^3)", 9),
                               la::catalog_generators(GroupId::H216SL3)));
}

TEST(Groups, SemiCharacters) {
  auto g168 = la::catalog_generators(GroupId::G168);
  for (const auto& chi : la::semi_character(poly("X1^3*X2+X2^3*X3+X3^3*X1", 7), g168))
    EXPECT_EQ(chi, Cyclo(1));
  EXPECT_THROW(la::semi_character(poly("X1+X2", 7), g168), la::NotSemiInvariant);
  EXPECT_THROW(la::semi_character(poly("X1+X2^2", 7), g168), la::NotSemiInvariant);

  // F3 and Phi3 in Q(zeta_36); the group is lifted to the same field.
  auto f36 = la::catalog_generators(GroupId::F36SL3);
  for (auto& gen : f36.generators) gen = la::lift_matrix(gen, 36);
  f36.conductor = 36;
  Cyclo r3 = la::constants::sqrt3();
  MPoly P = poly("X1*X2*X3", 36), S = poly("X1^3+X2^3+X3^3", 36);
  MPoly F3 = P.scaled(r3.scaled(6)) + S.scaled(r3 + Cyclo(3));
  MPoly Phi3 = P.scaled(r3.scaled(6)) + S.scaled(r3 - Cyclo(3));
  auto a = la::semi_character(F3, f36), b = la::semi_character(Phi3, f36);
  bool all_trivial = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].pow(36), Cyclo(1));
    EXPECT_EQ(a[i] * b[i], Cyclo(1));
    all_trivial = all_trivial && a[i] == Cyclo(1);
  }
  EXPECT_FALSE(all_trivial);
}

TEST(Groups, Molien) {
  EXPECT_EQ(la::molien(closed(GroupId::G168), 6), (std::vector<long>{1, 0, 0, 0, 1, 0, 1}));
  EXPECT_EQ(la::molien(closed(GroupId::A5), 2)[2], 1);
  for (GroupId id : la::all_groups()) EXPECT_EQ(la::molien(closed(id), 0)[0], 1);
}

TEST(Groups, MolienAgreesWithKernelDimension) {
  for (GroupId id : {GroupId::G168, GroupId::A5, GroupId::F36SL3, GroupId::H216SL3}) {
    const auto& g = closed(id);
    auto mol = la::molien(g, 9);
    for (int d = 1; d <= 9; ++d)
      EXPECT_EQ(mol[d], invariant_dimension(g, d)) << la::group_name(id) << " degree " << d;
  }
}

TEST(GroupsProperty, ClosedUnderProductWithDeterminantOne) {
  std::mt19937_64 rng(20260104);
  for (GroupId id : la::all_groups()) {
    const auto& g = closed(id);
    std::unordered_multimap<std::size_t, std::size_t> index;
    for (std::size_t i = 0; i < g.elements.size(); ++i) index.emplace(la::matrix_hash(g.elements[i]), i);
    auto contains = [&](const CMatrix& a) {
      auto r = index.equal_range(la::matrix_hash(a));
      for (auto it = r.first; it != r.second; ++it)
        if (g.elements[it->second] == a) return true;
      return false;
    };
    std::uniform_int_distribution<std::size_t> pick(0, g.elements.size() - 1);
    for (int t = 0; t < 200; ++t) {
      const auto& a = g.elements[pick(rng)];
      const auto& b = g.elements[pick(rng)];
      EXPECT_TRUE(contains(la::lift_matrix(a * b, g.conductor)));
      EXPECT_TRUE(contains(la::lift_matrix(*la::inverse(a), g.conductor)));
      EXPECT_EQ(la::det3(a), Cyclo(1));
    }
  }
}

TEST(GroupsProperty, ScalarSubgroupContainsOmega) {
  for (GroupId id : {GroupId::G168xC3, GroupId::H216SL3, GroupId::A6SL3, GroupId::A5xC3}) {
    const auto& g = closed(id);
    Cyclo w = la::constants::omega(g.conductor);
    CMatrix wI = la::lift_matrix(CMatrix::identity(3), g.conductor);
    for (int i = 0; i < 3; ++i) wI(i, i) = w;
    EXPECT_NE(std::find(g.elements.begin(), g.elements.end(), wI), g.elements.end()) << la::group_name(id);
  }
  EXPECT_EQ(closed(GroupId::G168xC3).elements.size(), 3 * closed(GroupId::G168).elements.size());
  EXPECT_EQ(la::projective_order(closed(GroupId::G168xC3)), la::projective_order(closed(GroupId::G168)));
}
