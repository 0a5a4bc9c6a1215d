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

#include <map>
#include <random>

#include "lode_atlas/invariants.hpp"

namespace la = lode_atlas;
using la::Cyclo;
using la::GroupId;
using la::QMPoly;
using la::Rat;

namespace {

const la::InvariantSet& inv(GroupId id) {
  static std::map<GroupId, la::InvariantSet> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, la::build_invariants(id)).first;
  return it->second;
}

const la::MatGroup& closed(GroupId id) {
  static std::map<GroupId, la::MatGroup> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, la::closure(la::catalog_generators(id))).first;
  return it->second;
}

const la::SyzygyRecord& syzygy(const la::InvariantSet& s, const std::string& name, bool alternative) {
  for (const auto& r : s.syzygies)
    if (r.name == name && r.alternative() == alternative) return r;
  throw std::runtime_error("missing syzygy " + name);
}

const la::IdentityRecord& identity(const la::InvariantSet& s, const std::string& prefix, bool alternative) {
  for (const auto& r : s.identities)
    if (r.name.rfind(prefix, 0) == 0 && r.alternative() == alternative) return r;
  throw std::runtime_error("missing identity " + prefix);
}

const std::vector<GroupId> kBase = {GroupId::G168, GroupId::H216SL3, GroupId::H72SL3,
                                    GroupId::F36SL3, GroupId::A6SL3,  GroupId::A5};

// Rank of the span of all degree-d products of members, exactly over Q.
long product_rank(const la::InvariantSet& s, int d) {
  std::vector<QMPoly> prods;
  std::function<void(std::size_t, int, QMPoly)> rec = [&](std::size_t i, int left, QMPoly acc) {
    if (left == 0) {
      prods.push_back(acc);
      return;
    }
    if (i == s.members.size()) return;
    const auto& m = s.members[i];
    rec(i + 1, left, acc);
    QMPoly p = acc;
    for (int used = m.degree; used <= left; used += m.degree) {
      p = p * m.poly;
      rec(i + 1, left - used, p);
    }
  };
  QMPoly one = QMPoly::monomial({0, 0, 0}, Rat(1));
  rec(0, d, one);
  if (prods.empty()) return 0;
  std::map<la::mono::Key, std::size_t> col;
  for (const auto& p : prods)
    for (const auto& t : p.terms()) col.emplace(t.first, col.size());
  la::Matrix<Rat> m(prods.size(), col.size(), Rat(0));
  for (std::size_t r = 0; r < prods.size(); ++r)
    for (const auto& t : prods[r].terms()) m(r, col[t.first]) = t.second;
  return static_cast<long>(la::row_reduce(m).size());
}

}  // namespace

TEST(Invariants, Degrees) {
  EXPECT_EQ(inv(GroupId::G168).degrees(), (std::vector<int>{4, 6, 14, 21}));
  EXPECT_EQ(inv(GroupId::A5).degrees(), (std::vector<int>{2, 6, 10, 15}));
  EXPECT_EQ(inv(GroupId::A6SL3).degrees(), (std::vector<int>{6, 12, 30, 45}));
  EXPECT_EQ(inv(GroupId::F36SL3).degrees(), (std::vector<int>{6, 6, 9, 12, 12}));
  EXPECT_EQ(inv(GroupId::H72SL3).degrees(), (std::vector<int>{6, 9, 12, 12}));
  const auto& h = inv(GroupId::H216SL3);
  std::vector<std::string> names;
  for (const auto& m : h.members) names.push_back(m.name);
  EXPECT_EQ(names, (std::vector<std::string>{"R", "Phi12", "F6^3", "F6*F12"}));
  EXPECT_EQ(h.degrees(), (std::vector<int>{9, 12, 18, 18}));
}

TEST(Invariants, ScalarExtensionsReuseTheBaseSet) {
  EXPECT_EQ(la::build_invariants(GroupId::G168xC3, la::default_data_dir(), false).degrees(),
            inv(GroupId::G168).degrees());
  EXPECT_EQ(la::build_invariants(GroupId::A5xC3, la::default_data_dir(), false).key, "a5");
}

TEST(Invariants, MembersAreHomogeneousAndInvariant) {
  for (GroupId id : kBase) {
    auto g = la::catalog_generators(id);
    for (const auto& m : inv(id).members) {
      EXPECT_TRUE(m.poly.is_homogeneous()) << m.name;
      if (m.degree <= 21) EXPECT_TRUE(la::is_invariant(m.poly, g)) << m.name;
    }
  }
  EXPECT_FALSE(la::is_invariant(inv(GroupId::A5).member("F2").poly,
                                la::catalog_generators(GroupId::G168)));
}

TEST(Invariants, KleinSyzygy) {
  EXPECT_TRUE(la::verify_syzygy(inv(GroupId::G168), "T").is_zero_poly());
}

TEST(Invariants, HessianFamilySyzygies) {
  EXPECT_TRUE(la::verify_syzygy(inv(GroupId::F36SL3), "T18").is_zero_poly());
  EXPECT_TRUE(la::verify_syzygy(inv(GroupId::H72SL3), "T36").is_zero_poly());
  EXPECT_TRUE(la::verify_syzygy(inv(GroupId::H216SL3), "T54").is_zero_poly());
}

// The degree-24 relation as printed mixes weights 18 and 24; the homogeneous
// relation that does hold is kept as a separate labelled reading.
TEST(Invariants, DegreeTwentyFourRelation) {
  const auto& s = inv(GroupId::F36SL3);
  auto printed = la::verify_syzygy(s, syzygy(s, "T24", false));
  EXPECT_FALSE(printed.residual.is_zero_poly());
  EXPECT_FALSE(printed.weighted_homogeneous);
  EXPECT_EQ(printed.weights, (std::vector<int>{18, 24}));
  auto alt = la::verify_syzygy(s, syzygy(s, "T24", true));
  EXPECT_TRUE(alt.residual.is_zero_poly());
  EXPECT_TRUE(alt.weighted_homogeneous);
}

TEST(Invariants, IcosahedralSyzygies) {
  EXPECT_TRUE(la::verify_syzygy(inv(GroupId::A5), "T").is_zero_poly());
  const auto& s = inv(GroupId::A6SL3);
  auto check = la::verify_syzygy(s, s.syzygies.front());
  EXPECT_TRUE(check.residual.is_zero_poly());
  EXPECT_EQ(check.weights, (std::vector<int>{90}));
}

TEST(Invariants, Identities) {
  const auto& f36 = inv(GroupId::F36SL3);
  EXPECT_TRUE(la::check_identity(f36, identity(f36, "Phi12", false)).holds);
  EXPECT_FALSE(la::check_identity(f36, identity(f36, "F3*Phi3", false)).holds);
  EXPECT_TRUE(la::check_identity(f36, identity(f36, "F3*Phi3", true)).holds);
  const auto& g = inv(GroupId::G168);
  EXPECT_TRUE(la::check_identity(g, g.identities.front()).holds);
  QMPoly hess = la::poly_det(la::hessian(g.member("F4").poly));
  EXPECT_TRUE(la::check_identity(la::to_cyclo(hess), la::to_cyclo(g.member("F6").poly.scaled(Rat(54)))));
}

TEST(InvariantsProperty, MolienDominatesProducts) {
  for (GroupId id : kBase) {
    const auto& s = inv(id);
    auto mol = la::molien(closed(id), 12);
    for (const auto& m : s.members)
      if (m.degree <= 12) EXPECT_GE(mol[m.degree], 1) << m.name;
    for (int d = 0; d <= 12; ++d) EXPECT_GE(mol[d], product_rank(s, d)) << la::group_name(id) << " " << d;
  }
}

TEST(InvariantsProperty, OrbitSignatures) {
  std::mt19937_64 rng(20260105);
  std::uniform_int_distribution<long> c(-3, 3);
  for (GroupId id : kBase) {
    const auto& s = inv(id);
    const auto& g = closed(id);
    const int m = g.conductor;
    std::vector<la::MPoly> members;
    for (const auto& mem : s.members)
      if (mem.degree <= 15) members.push_back(la::to_cyclo(mem.poly, m));
    auto signature = [&](const std::vector<Cyclo>& x) {
      std::vector<Cyclo> out;
      for (const auto& f : members) out.push_back(f.eval(x));
      return out;
    };
    std::uniform_int_distribution<std::size_t> pick(0, g.elements.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Cyclo> x = {Cyclo::rational(c(rng), m), Cyclo::rational(c(rng), m),
                              Cyclo::rational(1 + trial % 3, m)};
      auto sig = signature(x);
      for (int k = 0; k < 6; ++k) EXPECT_EQ(signature(la::act(x, g.elements[pick(rng)])), sig);
      // A nearby point that is not in the orbit separates.
      std::vector<Cyclo> y = x;
      y[2] = y[2] + Cyclo(1);
      bool in_orbit = false;
      for (const auto& e : g.elements)
        if (la::act(x, e) == y) in_orbit = true;
      if (!in_orbit) EXPECT_NE(signature(y), sig) << la::group_name(id);
    }
  }
}
