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

// JSON layouts shared by fixtures, reports and the CLI:
//   Rat     "p/q" string
//   Cyclo   {"conductor": m, "coeffs": [Rat...]}
//   MPoly   [{"exp": [e1, e2, e3], "coeff": Cyclo}, ...]
//   QPoly   [Rat...] ascending powers
//   RatFun  {"num": QPoly, "den": QPoly}
//   LinODE  {"order": n, "coeffs": [RatFun a_0 ... a_{n-1}]}
// Rational functions in fixtures may also be given as expression strings in t.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lode_atlas/cyclo.hpp"
#include "lode_atlas/expr.hpp"
#include "lode_atlas/linode.hpp"
#include "lode_atlas/mpoly.hpp"
#include "lode_atlas/series.hpp"

namespace lode_atlas {

using json = nlohmann::json;

inline json to_json(const Rat& r) { return to_string(r); }

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw ParseError("rational must be a string or integer: " + j.dump());
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError("bad rational " + j.dump());
  }
}

inline json to_json(const Cyclo& c) {
  json co = json::array();
  for (const auto& x : c.coeffs()) co.push_back(to_json(x));
  return {{"conductor", c.conductor()}, {"coeffs", co}};
}

inline Cyclo cyclo_from_json(const json& j) {
  std::vector<Rat> c;
  for (const auto& x : j.at("coeffs")) c.push_back(rat_from_json(x));
  return Cyclo(j.at("conductor").get<int>(), std::move(c));
}

inline json to_json(const MPoly& p) {
  json out = json::array();
  for (const auto& [k, c] : p.terms()) out.push_back({{"exp", mono::unpack(k, p.nvars())}, {"coeff", to_json(c)}});
  return out;
}

inline json to_json(const QMPoly& p) { return to_json(to_cyclo(p)); }

inline MPoly mpoly_from_json(const json& j, int nvars = 3) {
  std::vector<MPoly::Term> terms;
  for (const auto& t : j) {
    auto e = t.at("exp").get<std::vector<int>>();
    if (static_cast<int>(e.size()) != nvars) throw ParseError("exponent vector of the wrong length");
    terms.emplace_back(mono::pack(e), cyclo_from_json(t.at("coeff")));
  }
  return MPoly::from_terms(nvars, std::move(terms));
}

inline json to_json(const QPoly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

inline QPoly qpoly_from_json(const json& j) {
  std::vector<Rat> c;
  for (const auto& x : j) c.push_back(rat_from_json(x));
  return QPoly(std::move(c));
}

inline json to_json(const RatFun& r) { return {{"num", to_json(r.num())}, {"den", to_json(r.den())}}; }

// Rational function in the variable t, e.g. "(7*t-4)/(2*t*(t-1))"; further
// names are looked up in vars.
inline RatFun parse_ratfun(const std::string& src, const std::map<std::string, RatFun>& vars = {}) {
  using expr::Node;
  std::function<RatFun(const expr::NodePtr&)> ev = [&](const expr::NodePtr& n) -> RatFun {
    switch (n->kind) {
      case Node::Num: return RatFun(n->value);
      case Node::Var:
        if (n->name == "t") return RatFun::t();
        if (auto it = vars.find(n->name); it != vars.end()) return it->second;
        throw ParseError("unknown variable '" + n->name + "' in " + src);
      case Node::Add: return ev(n->kids[0]) + ev(n->kids[1]);
      case Node::Sub: return ev(n->kids[0]) - ev(n->kids[1]);
      case Node::Neg: return -ev(n->kids[0]);
      case Node::Mul: return ev(n->kids[0]) * ev(n->kids[1]);
      case Node::Div: {
        RatFun d = ev(n->kids[1]);
        if (d.is_zero()) throw ParseError("division by zero in " + src);
        return ev(n->kids[0]) / d;
      }
      case Node::Pow: return ev(n->kids[0]).pow(static_cast<int>(n->exponent));
    }
    throw ParseError("bad expression " + src);
  };
  return ev(expr::parse(src));
}

inline RatFun ratfun_from_json(const json& j) {
  if (j.is_string()) return parse_ratfun(j.get<std::string>());
  if (j.is_number_integer()) return RatFun(j.get<long>());
  QPoly den = j.contains("den") ? qpoly_from_json(j.at("den")) : QPoly(1);
  if (den.is_zero()) throw ParseError("zero denominator");
  return RatFun(qpoly_from_json(j.at("num")), den);
}

inline json to_json(const LinODE& L) {
  json co = json::array();
  for (const auto& c : L.coeffs()) co.push_back(to_json(c));
  return {{"order", L.order()}, {"coeffs", co}};
}

inline LinODE linode_from_json(const json& j) {
  std::vector<RatFun> c;
  for (const auto& x : j.at("coeffs")) c.push_back(ratfun_from_json(x));
  if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(c.size()))
    throw ParseError("operator order does not match its coefficient count");
  if (c.empty()) throw ParseError("operator of order 0");
  return LinODE(std::move(c));
}

inline json to_json(const TruncSeries& s) {
  json co = json::array();
  for (const auto& c : s.coeffs()) co.push_back(to_json(c));
  return {{"base", to_json(s.base())}, {"order", s.order()}, {"coeffs", co}};
}

}  // namespace lode_atlas
