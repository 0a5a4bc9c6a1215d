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

// Report builders behind the command-line subcommands.

#include <chrono>
#include <string>
#include <utility>

#include "lode_atlas/groups.hpp"
#include "lode_atlas/invariants.hpp"
#include "lode_atlas/pipeline.hpp"

namespace lode_atlas {

struct GroupOrders {
  std::size_t order, projective;
};

// Orders of the groups in SL3 and of their images in PGL3.
inline GroupOrders documented_orders(GroupId id) {
  switch (id) {
    case GroupId::G168: return {168, 168};
    case GroupId::G168xC3: return {504, 168};
    case GroupId::H216SL3: return {648, 216};
    case GroupId::H72SL3: return {216, 72};
    case GroupId::F36SL3: return {108, 36};
    case GroupId::A6SL3: return {1080, 360};
    case GroupId::A5: return {60, 60};
    case GroupId::A5xC3: return {180, 60};
  }
  return {0, 0};
}

inline Report group_report(GroupId id) {
  Report rep;
  rep.command = "group";
  const std::string tag = group_name(id);
  auto t0 = std::chrono::steady_clock::now();
  MatGroup g = closure(catalog_generators(id));
  const double secs = detail::seconds_since(t0);
  bool det_one = true;
  for (const auto& e : g.elements) det_one = det_one && det3(e) == Cyclo(1);
  const GroupOrders want = documented_orders(id);
  const std::size_t proj = projective_order(g);
  rep.add(tag + ".order", g.elements.size() == want.order, "order " + std::to_string(g.elements.size()),
          json{{"expected", want.order}, {"computed", g.elements.size()}})
      .seconds = secs;
  rep.add(tag + ".projective_order", proj == want.projective, "projective order " + std::to_string(proj),
          json{{"expected", want.projective}, {"computed", proj}});
  rep.add(tag + ".determinant", det_one, "every element has determinant 1");
  rep.data = {{"group", tag},
              {"order", g.elements.size()},
              {"projective_order", proj},
              {"conductor", g.conductor},
              {"generators", g.generator_names}};
  return rep;
}

inline json residual_terms(const QMPoly& r, std::size_t limit = 5) {
  json a = json::array();
  for (const auto& [k, c] : r.terms()) {
    if (a.size() >= limit) break;
    a.push_back({{"exp", mono::unpack(k, 3)}, {"coeff", to_json(c)}});
  }
  return {{"terms", r.size()}, {"leading", a}};
}

inline Report invariants_report(GroupId id, const std::string& data_dir = default_data_dir(), bool with_polys = false) {
  Report rep;
  rep.command = "invariants";
  const std::string tag = group_name(detail::base_group(id));
  InvariantSet set;
  try {
    set = build_invariants(id, data_dir, true);
  } catch (const CatalogIntegrityError& e) {
    rep.add(tag + ".invariance", false, e.what());
    return rep;
  }
  json members = json::array();
  for (const auto& m : set.members) {
    json j = {{"symbol", m.symbol}, {"name", m.name}, {"degree", m.degree}, {"terms", m.poly.size()}};
    if (with_polys) j["poly"] = to_json(m.poly);
    members.push_back(std::move(j));
  }
  rep.add(tag + ".invariance", true, std::to_string(set.members.size()) + " members fixed by every generator");
  for (const auto& rec : set.syzygies) {
    SyzygyCheck s = verify_syzygy(set, rec);
    const bool ok = s.residual.is_zero_poly();
    json w = residual_terms(s.residual);
    w["weighted_homogeneous"] = s.weighted_homogeneous;
    w["weights"] = s.weights;
    Check& c = rep.add(tag + ".syzygy." + s.name + (rec.alternative() ? "[alternative]" : ""), ok,
                       "residual of " + s.name + (rec.note.empty() ? "" : " (" + rec.note + ")"), w);
    c.reading = rec.reading;
  }
  for (const auto& rec : set.identities) {
    IdentityCheck ic = check_identity(set, rec);
    Check& c = rep.add(tag + ".identity." + ic.name + (rec.alternative() ? "[alternative]" : ""), ic.holds,
                       ic.lhs + " = " + ic.rhs + (rec.note.empty() ? "" : " (" + rec.note + ")"),
                       json{{"difference_terms", ic.difference.size()}});
    c.reading = rec.reading;
  }
  rep.data = {{"group", tag}, {"members", members}, {"notes", set.notes}};
  return rep;
}

inline Report molien_report(GroupId id, int up_to) {
  Report rep;
  rep.command = "molien";
  MatGroup g = closure(catalog_generators(id));
  auto series = molien(g, up_to);
  rep.add(group_name(id) + ".molien", !series.empty() && series[0] == 1, "constant term 1",
          json{{"series", series}});
  rep.data = {{"group", group_name(id)}, {"series", series}};
  return rep;
}

}  // namespace lode_atlas
