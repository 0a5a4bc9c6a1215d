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

// Invariant generators of the catalog groups, built from their defining
// formulas, together with syzygies and identities loaded from the data
// directory.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "lode_atlas/expr.hpp"
#include "lode_atlas/groups.hpp"
#include "lode_atlas/mpoly.hpp"

namespace lode_atlas {

inline std::string default_data_dir() {
  if (const char* env = std::getenv("LODE_ATLAS_DATA")) return env;
#ifdef LODE_ATLAS_DATA_DIR
  return LODE_ATLAS_DATA_DIR;
#else
  return "data";
#endif
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FixtureError(path + ": " + e.what());
  }
}

struct Member {
  std::string symbol;  // name inside syzygies, e.g. Z4
  std::string name;    // defining expression in named polynomials, e.g. F4
  int degree = 0;
  QMPoly poly{3};
};

struct SyzygyRecord {
  std::string name, reading, expression, printed, note;
  bool alternative() const { return reading == "alternative"; }
};

struct IdentityRecord {
  std::string name, reading, lhs, rhs, note;
  bool alternative() const { return reading == "alternative"; }
};

struct InvariantSet {
  GroupId group = GroupId::G168;
  std::string key;  // fixture key
  std::vector<Member> members;
  std::map<std::string, QMPoly> named;     // rational named polynomials
  std::map<std::string, MPoly> semi;       // cyclotomic semi-invariants (F3, Phi3)
  std::vector<SyzygyRecord> syzygies;
  std::vector<IdentityRecord> identities;
  std::vector<std::string> notes;

  std::vector<int> degrees() const {
    std::vector<int> d;
    for (const auto& m : members) d.push_back(m.degree);
    return d;
  }
  const Member& member(const std::string& symbol) const {
    for (const auto& m : members)
      if (m.symbol == symbol || m.name == symbol) return m;
    throw InvalidParameter("no member " + symbol);
  }
};

namespace detail {

class NamedTable {
 public:
  NamedTable() {
    for (int i = 0; i < 3; ++i) polys_["X" + std::to_string(i + 1)] = QMPoly::variable(3, i);
  }
  const QMPoly& get(const std::string& n) const {
    auto it = polys_.find(n);
    if (it == polys_.end()) throw ParseError("unknown polynomial name '" + n + "'");
    return it->second;
  }
  const QMPoly& define(const std::string& name, const std::string& src) {
    return polys_[name] = eval(src);
  }
  const QMPoly& set(const std::string& name, QMPoly p) { return polys_[name] = std::move(p); }
  QMPoly eval(const std::string& src) const {
    expr::Evaluator<QMPoly> ev(3, [this](const std::string& n) -> const QMPoly& { return get(n); });
    return ev(expr::parse(src));
  }
  std::map<std::string, QMPoly> take() {
    std::map<std::string, QMPoly> out;
    for (auto& kv : polys_)
      if (kv.first.size() < 2 || kv.first[0] != 'X' || !std::isdigit(static_cast<unsigned char>(kv.first[1])))
        out.emplace(kv.first, kv.second);
    return out;
  }

 private:
  std::map<std::string, QMPoly> polys_;
};

inline std::vector<QMPoly> gradient(const QMPoly& F) { return {F.diff(0), F.diff(1), F.diff(2)}; }

inline QMPoly bordered_hessian(const QMPoly& F, const QMPoly& G) {
  auto H = hessian(F);
  auto g = gradient(G);
  std::vector<std::vector<QMPoly>> m(4);
  for (int i = 0; i < 3; ++i) {
    m[i] = H[i];
    m[i].push_back(g[i]);
  }
  m[3] = g;
  m[3].push_back(QMPoly(3));
  return poly_det(m);
}

inline QMPoly jacobian(const QMPoly& a, const QMPoly& b, const QMPoly& c) {
  return poly_det(std::vector<std::vector<QMPoly>>{gradient(a), gradient(b), gradient(c)});
}

inline std::string fixture_key(GroupId id) {
  switch (id) {
    case GroupId::G168:
    case GroupId::G168xC3: return "g168";
    case GroupId::H216SL3: return "h216";
    case GroupId::H72SL3: return "h72";
    case GroupId::F36SL3: return "f36";
    case GroupId::A6SL3: return "a6";
    case GroupId::A5:
    case GroupId::A5xC3: return "a5";
  }
  return "";
}

inline GroupId base_group(GroupId id) {
  if (id == GroupId::G168xC3) return GroupId::G168;
  if (id == GroupId::A5xC3) return GroupId::A5;
  return id;
}

}  // namespace detail

// Builds the member polynomials and loads syzygies/identities. Throws
// CatalogIntegrityError when a member is not homogeneous of its degree or not
// fixed by every generator (when check_invariance is set).
inline InvariantSet build_invariants(GroupId requested, const std::string& data_dir = default_data_dir(),
                                     bool check_invariance = true) {
  const GroupId id = detail::base_group(requested);
  InvariantSet set;
  set.group = id;
  set.key = detail::fixture_key(id);
  if (id != requested)
    set.notes.push_back("members are those of " + group_name(id) +
                        " (same projective image; the scalar factor is not imposed)");
  detail::NamedTable tab;
  switch (id) {
    case GroupId::G168:
    case GroupId::G168xC3: {
      const QMPoly& F4 = tab.define("F4", "X1^3*X2+X2^3*X3+X3^3*X1");
      QMPoly hess = poly_det(hessian(F4));
      tab.set("HessF4", hess);
      const QMPoly& F6 = tab.set("F6", hess.scaled(make_rat(1, 54)));
      const QMPoly& F14 = tab.set("F14", detail::bordered_hessian(F4, F6).scaled(make_rat(1, 9)));
      tab.set("F21", detail::jacobian(F4, F6, F14).scaled(make_rat(1, 14)));
      break;
    }
    case GroupId::H216SL3:
    case GroupId::H72SL3:
    case GroupId::F36SL3: {
      tab.define("P", "X1*X2*X3");
      tab.define("S", "X1^3+X2^3+X3^3");
      tab.define("Q", "X1^3*X2^3+X1^3*X3^3+X2^3*X3^3");
      tab.define("R", "(X1^3-X2^3)*(X1^3-X3^3)*(X2^3-X3^3)");
      tab.define("F6", "S^2-12*Q");
      tab.define("Phi6", "S^2-18*P^2-6*P*S");
      tab.define("F12", "S^4+216*P^3*S");
      tab.define("Phi12", "P*(27*P^3-S^3)");
      tab.define("Psi12", "P*S^3+3*P^2*S^2-18*P^3*S");
      // F3 = 6 sqrt3 P + (sqrt3 + 3) S, Phi3 = 6 sqrt3 P + (sqrt3 - 3) S in Q(zeta_36).
      Cyclo r3 = constants::sqrt3();
      MPoly P = to_cyclo(tab.get("P"), 36), S = to_cyclo(tab.get("S"), 36);
      set.semi["F3"] = P.scaled(r3.scaled(Rat(6))) + S.scaled(r3 + Cyclo(3));
      set.semi["Phi3"] = P.scaled(r3.scaled(Rat(6))) + S.scaled(r3 - Cyclo(3));
      break;
    }
    case GroupId::A6SL3: {
      const QMPoly& F6 = tab.define(
          "F6", "10*X1^3*X2^3+9*X1^5*X3+9*X2^5*X3-45*X1^2*X2^2*X3^2-135*X1*X2*X3^4+27*X3^6");
      const QMPoly& F12 = tab.set("F12", poly_det(hessian(F6)).scaled(make_rat(-1, 20250)));
      const QMPoly& F30 =
          tab.set("F30", detail::bordered_hessian(F6, F12).scaled(make_rat(1, 24300)));
      tab.set("F45", detail::jacobian(F6, F12, F30).scaled(make_rat(1, 4860)));
      break;
    }
    case GroupId::A5:
    case GroupId::A5xC3: {
      tab.define("F2", "X1^2+X2*X3");
      tab.define("F6", "8*X1^4*X2*X3-2*X1^2*X2^2*X3^2-X1*(X2^5+X3^5)+X2^3*X3^3");
      tab.define("F10",
                 "320*X1^6*X2^2*X3^2-160*X1^4*X2^3*X3^3+20*X1^2*X2^4*X3^4+6*X2^5*X3^5"
                 "-4*X1*(X2^5+X3^5)*(32*X1^4-20*X1^2*X2*X3+5*X2^2*X3^2)+X2^10+X3^10");
      tab.define("F15",
                 "(X2^5-X3^5)*(-1024*X1^10+3840*X1^8*X2*X3-3840*X1^6*X2^2*X3^2+1200*X1^4*X2^3*X3^3"
                 "-100*X1^2*X2^4*X3^4+X2^10+X3^10+2*X2^5*X3^5"
                 "+X1*(X2^5+X3^5)*(352*X1^4-160*X1^2*X2*X3+10*X2^2*X3^2))");
      set.notes.push_back(
          "the printed section header names the A6 ring but lists these A5 invariants; read as A5");
      break;
    }
  }

  nlohmann::json fx = load_json_file(data_dir + "/syzygies.json");
  if (fx.value("format", "") != "lode-atlas/syzygies/v1")
    throw FixtureError("syzygies.json: unknown format");
  const auto& entry = fx.at("sets").at(set.key);
  for (const auto& [symbol, def] : entry.at("variables").items()) {
    Member m;
    m.symbol = symbol;
    m.name = def.get<std::string>();
    m.poly = tab.eval(m.name);
    if (!m.poly.is_homogeneous()) throw CatalogIntegrityError(m.name + " is not homogeneous");
    m.degree = m.poly.degree();
    // The symbol carries the degree (Z14 -> 14).
    std::size_t pos = symbol.find_first_of("0123456789");
    if (pos != std::string::npos && std::stoi(symbol.substr(pos)) != m.degree)
      throw CatalogIntegrityError(symbol + " has degree " + std::to_string(m.degree));
    set.members.push_back(std::move(m));
  }
  std::sort(set.members.begin(), set.members.end(), [](const Member& a, const Member& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.symbol < b.symbol;
  });
  for (const auto& s : entry.at("syzygies"))
    set.syzygies.push_back({s.at("name"), s.value("reading", "printed"), s.at("expression"),
                            s.value("printed", ""), s.value("note", "")});
  for (const auto& s : entry.at("identities"))
    set.identities.push_back(
        {s.at("name"), s.value("reading", "printed"), s.at("lhs"), s.at("rhs"), s.value("note", "")});
  set.named = tab.take();

  if (check_invariance) {
    MatGroup g = catalog_generators(id);
    for (const auto& m : set.members)
      if (!is_invariant(m.poly, g))
        throw CatalogIntegrityError(m.name + " is not invariant under " + group_name(id));
  }
  return set;
}

struct SyzygyCheck {
  std::string name, reading, note;
  QMPoly residual{3};
  bool weighted_homogeneous = true;
  std::vector<int> weights;  // distinct weighted degrees of the syzygy's terms
};

// Expands a syzygy with the members substituted. The residual is zero when the
// relation holds.
inline SyzygyCheck verify_syzygy(const InvariantSet& set, const SyzygyRecord& rec) {
  SyzygyCheck out;
  out.name = rec.name;
  out.reading = rec.reading;
  out.note = rec.note;
  std::vector<std::string> vars;
  std::vector<int> var_degree;
  for (const auto& m : set.members) {
    vars.push_back(m.symbol);
    var_degree.push_back(m.degree);
  }
  QMPoly abstract = expr::parse_polynomial<QMPoly>(rec.expression, vars);
  std::set<int> weights;
  for (const auto& t : abstract.terms()) {
    int w = 0;
    for (std::size_t i = 0; i < vars.size(); ++i)
      w += mono::exponent(t.first, static_cast<int>(i)) * var_degree[i];
    weights.insert(w);
  }
  out.weights.assign(weights.begin(), weights.end());
  out.weighted_homogeneous = weights.size() <= 1;
  expr::Evaluator<QMPoly> ev(3, [&set](const std::string& n) -> const QMPoly& {
    return set.member(n).poly;
  });
  out.residual = ev(expr::parse(rec.expression));
  return out;
}

inline QMPoly verify_syzygy(const InvariantSet& set, const std::string& name) {
  for (const auto& rec : set.syzygies)
    if (rec.name == name && !rec.alternative()) return verify_syzygy(set, rec).residual;
  throw InvalidParameter("no syzygy named " + name);
}

inline bool check_identity(const MPoly& lhs, const MPoly& rhs) { return lhs == rhs; }

struct IdentityCheck {
  std::string name, reading, lhs, rhs;
  bool holds = false;
  MPoly difference{3};
};

inline IdentityCheck check_identity(const InvariantSet& set, const IdentityRecord& rec) {
  std::map<std::string, MPoly> cache;
  expr::Evaluator<MPoly> ev(3, [&](const std::string& n) -> const MPoly& {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto s = set.semi.find(n);
    if (s != set.semi.end()) return cache.emplace(n, s->second).first->second;
    auto q = set.named.find(n);
    if (q == set.named.end()) throw ParseError("unknown polynomial name '" + n + "'");
    return cache.emplace(n, to_cyclo(q->second)).first->second;
  });
  IdentityCheck out{rec.name, rec.reading, rec.lhs, rec.rhs};
  MPoly l = ev(expr::parse(rec.lhs)), r = ev(expr::parse(rec.rhs));
  out.difference = l - r;
  out.holds = out.difference.is_zero_poly();
  return out;
}

}  // namespace lode_atlas
