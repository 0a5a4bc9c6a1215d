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

// The worked example: an order-3 operator with Galois group G168 reduced to
// the Klein standard equation. verify_example checks the operator identity
// gauge(L, [1, f1]) = exp_product(pullback(L_std, h), f, lambda) and its
// invariant-value corroboration; closed_form inverts the gauge and rewrites
// the solution in terms of 3F2 at h(t).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "lode_atlas/catalog.hpp"

namespace lode_atlas {

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Checksum over the canonical dump of the fixture object (sorted keys).
inline std::string fixture_checksum(const json& fixture) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(fixture.dump())));
  return buf;
}

struct ClosedFormData {
  Rat constant;
  Rat exp_t, exp_t1;               // prefactor t^exp_t (t-1)^exp_t1
  std::vector<RatFun> coefficients;  // of F, F', F'' as printed
  RatFun factor;
};

struct CurveData {
  std::vector<std::string> terms;
  std::vector<Rat> printed;
  Rat suspected;
};

struct ExampleFixture {
  std::string name, checksum;
  LinODE L;
  RatFun f1, f, h, v;
  std::string p1, p2, p3, f4_generic;  // expressions in t and f1
  long lambda = 6;
  std::string standard;
  Rat base_point = 2;
  ClosedFormData closed;
  CurveData curve;

  // An expression in t and f1 evaluated at the given f1.
  RatFun eval(const std::string& src, const RatFun& f1v) const {
    std::map<std::string, RatFun> vars{{"f1", f1v}};
    vars["p1"] = parse_ratfun(p1, vars);
    vars["p2"] = parse_ratfun(p2, vars);
    vars["p3"] = parse_ratfun(p3, vars);
    return parse_ratfun(src, vars);
  }
  // Root in f1 of an expression linear in f1.
  RatFun linear_root(const std::string& src) const {
    RatFun e0 = eval(src, RatFun(0)), e1 = eval(src, RatFun(1));
    if (e0 == e1) throw FixtureError(src + " does not depend on f1");
    return e0 / (e0 - e1);
  }
};

inline ExampleFixture load_example(const std::string& data_dir = default_data_dir()) {
  json j = load_json_file(data_dir + "/example.json");
  ExampleFixture fx;
  try {
    const json& d = j.at("fixture");
    fx.checksum = fixture_checksum(d);
    if (j.at("checksum").get<std::string>() != fx.checksum)
      throw FixtureError("example.json checksum mismatch: stored " + j.at("checksum").get<std::string>() +
                         ", computed " + fx.checksum);
    fx.name = d.at("name");
    fx.L = linode_from_json(d.at("operator"));
    fx.f1 = ratfun_from_json(d.at("f1"));
    fx.f = ratfun_from_json(d.at("f"));
    fx.h = ratfun_from_json(d.at("h"));
    fx.v = ratfun_from_json(d.at("hauptmodul_value"));
    fx.p1 = d.at("p1");
    fx.p2 = d.at("p2");
    fx.p3 = d.at("p3");
    fx.f4_generic = d.at("f4_generic");
    fx.lambda = d.at("lambda");
    fx.standard = d.at("standard");
    fx.base_point = rat_from_json(d.at("base_point"));
    const json& c = d.at("closed_form");
    fx.closed.constant = rat_from_json(c.at("constant"));
    fx.closed.exp_t = rat_from_json(c.at("prefactor_exponents").at("t"));
    fx.closed.exp_t1 = rat_from_json(c.at("prefactor_exponents").at("t-1"));
    for (const auto& x : c.at("coefficients")) fx.closed.coefficients.push_back(ratfun_from_json(x));
    fx.closed.factor = ratfun_from_json(c.at("factor"));
    const json& cv = d.at("curve");
    fx.curve.terms = cv.at("terms").get<std::vector<std::string>>();
    for (const auto& x : cv.at("printed")) fx.curve.printed.push_back(rat_from_json(x));
    fx.curve.suspected = rat_from_json(cv.at("suspected"));
  } catch (const json::exception& e) {
    throw FixtureError(std::string("example.json: ") + e.what());
  }
  if (fx.L.order() != 3 || fx.closed.coefficients.size() != 3 || fx.curve.printed.size() != 3)
    throw FixtureError("example.json: unexpected shape");
  return fx;
}

namespace detail {

// First index where two operators differ, as a witness.
inline json operator_mismatch(const LinODE& a, const LinODE& b) {
  if (a.order() != b.order()) return {{"order", {a.order(), b.order()}}};
  for (int i = 0; i < a.order(); ++i)
    if (a.coeff(i) != b.coeff(i))
      return {{"coeff", i}, {"lhs", a.coeff(i).str()}, {"rhs", b.coeff(i).str()}};
  return nullptr;
}

inline LinODE example_target(const ExampleFixture& fx, const std::string& data_dir, const RatFun& f) {
  StandardEquation std_eq = standard_equation(*parse_group(fx.standard), data_dir);
  return exp_product(pullback(std_eq.op, fx.h), f, fx.lambda);
}

// Exact k-th root of a nonzero rational number, if it exists.
inline std::optional<Rat> rat_root(const Rat& r, unsigned k) {
  if (r < 0 && k % 2 == 0) return std::nullopt;
  Int a = abs(r.get_num()), b = r.get_den(), ra, rb;
  if (!mpz_root(ra.get_mpz_t(), a.get_mpz_t(), k) || !mpz_root(rb.get_mpz_t(), b.get_mpz_t(), k)) return std::nullopt;
  Rat out(ra, rb);
  out.canonicalize();
  return r < 0 ? -out : out;
}

inline std::optional<QPoly> poly_root(const QPoly& p, int k) {
  const Rat lc = p.coeff(p.degree());
  auto c = rat_root(lc, static_cast<unsigned>(k));
  if (!c) return std::nullopt;
  QPoly out(*c);
  for (const auto& [f, m] : square_free(p)) {
    if (m % k != 0) return std::nullopt;
    out = out * f.pow(m / k);
  }
  if (out.pow(k) != p) return std::nullopt;
  return out;
}

// Exact k-th root of a rational function (positive leading coefficients).
inline std::optional<RatFun> ratfun_root(const RatFun& r, int k) {
  auto n = poly_root(r.num(), k), d = poly_root(r.den(), k);
  if (!n || !d) return std::nullopt;
  return RatFun(*n, *d);
}

inline RatFun t_power(const Rat& e) {
  if (e.get_den() != 1) throw InvalidParameter("non-integral power");
  long k = e.get_num().get_si();
  QPoly m = QPoly::monomial(static_cast<int>(std::labs(k)));
  return k >= 0 ? RatFun(m) : RatFun(QPoly(1), m);
}

inline RatFun t1_power(const Rat& e) {
  if (e.get_den() != 1) throw InvalidParameter("non-integral power");
  long k = e.get_num().get_si();
  QPoly m = QPoly::linear(Rat(1)).pow(static_cast<int>(std::labs(k)));
  return k >= 0 ? RatFun(m) : RatFun(QPoly(1), m);
}

}  // namespace detail

struct ExampleOptions {
  bool invariant_values = true;  // rational solutions of symmetric powers
  bool spans = true;             // degree-6 and degree-14 span memberships
  bool curve_probe = true;
  int span_order = 320;
  std::string data_dir = default_data_dir();
};

// Probe of the curve relation c1 F6^3 + c2 F4 F14 + F4^3 F6 = 0 on the
// solutions of L. F4 is represented by the quartic form whose value on the
// series basis is the rational solution of S^4(L); F6 and F14 follow from
// Hessian and bordered Hessian covariants, which agree with the invariants up
// to powers of det^2 of the coordinate change. Only c1/c2 is independent of
// that normalization, so c1 is reported given the printed c2.
inline Check curve_probe(const ExampleFixture& fx, int order = 60) {
  Check c;
  c.name = "example.curve_relation";
  c.reading = "informational";
  auto t0 = std::chrono::steady_clock::now();
  auto r4 = rational_solutions(symmetric_power(fx.L, 4));
  if (r4.size() != 1) {
    c.status = Status::Fail;
    c.detail = "expected a one-dimensional space of quartic values";
    c.witness = json{{"dim", r4.size()}};
    return c;
  }
  const Rat t0p = fx.base_point;
  auto mono = [&](int d) { return solution_monomials(fx.L, t0p, order, d); };
  auto m4 = mono(4);
  SpanResult s4 = span_membership(m4, expand(r4[0], t0p, order));
  if (!s4.member) {
    c.status = Status::Fail;
    c.detail = "quartic value outside the degree-4 span";
    c.witness = json{{"rank", s4.rank}};
    return c;
  }
  auto form = [](const std::vector<Rat>& co, int d) {
    std::vector<QMPoly::Term> terms;
    auto ex = degree_exponents(3, d);
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (co[i] != 0) terms.emplace_back(mono::pack(ex[i]), co[i]);
    return QMPoly::from_terms(3, std::move(terms));
  };
  auto value = [&](const QMPoly& F, int d) {
    auto ms = mono(d);
    auto ex = degree_exponents(3, d);
    TruncSeries acc = TruncSeries::constant(t0p, 0, order);
    for (std::size_t i = 0; i < ex.size(); ++i) {
      Rat co = 0;
      for (const auto& [k, v] : F.terms())
        if (mono::unpack(k, 3) == ex[i]) co = v;
      if (co != 0) acc = acc + ms[i].scaled(co);
    }
    return acc;
  };
  QMPoly Q4 = form(s4.combination, 4);
  QMPoly G6 = poly_det(hessian(Q4)).scaled(make_rat(1, 54));
  QMPoly G14 = detail::bordered_hessian(Q4, G6).scaled(make_rat(1, 9));
  TruncSeries g4 = value(Q4, 4), g6 = value(G6, 6), g14 = value(G14, 14);
  SpanResult rel = span_membership({g6 * g6 * g6, g4 * g14}, g4 * g4 * g4 * g6);
  c.seconds = detail::seconds_since(t0);
  if (!rel.member || rel.combination[1] == 0) {
    c.status = Status::Fail;
    c.detail = "no relation of the printed shape among the covariant values";
    c.witness = json{{"rank", rel.rank}};
    return c;
  }
  // F4^3 F6 = p F6^3 + q F4 F14 up to normalization, so c1/c2 = p/q.
  const Rat c2 = fx.curve.printed[1];
  const Rat c1 = c2 * rel.combination[0] / rel.combination[1];
  std::string which = c1 == fx.curve.printed[0] ? "printed" : c1 == fx.curve.suspected ? "suspected" : "neither";
  c.status = Status::Pass;
  c.detail = "given c2 = " + to_string(c2) + ", the balancing c1 is " + to_string(c1) + " (printed " +
             to_string(fx.curve.printed[0]) + ", suspected " + to_string(fx.curve.suspected) + "): " + which;
  c.witness = json{{"c1", to_json(c1)}, {"c2", to_json(c2)}, {"matches", which}};
  return c;
}

inline Report verify_example(const ExampleFixture& fx, const ExampleOptions& opt = {}) {
  using clock = std::chrono::steady_clock;
  Report rep;
  rep.command = "verify-example";
  rep.add("example.fixture", true, "fixture loaded, " + fx.checksum);

  RatFun p1 = fx.eval(fx.p1, fx.f1);
  rep.add("example.f1_root", p1.is_zero(), "p1 vanishes at the chosen f1", json{{"p1", p1.str()}});

  auto t0 = clock::now();
  LinODE Lp = gauge_transform(fx.L, {RatFun(1), fx.f1});
  LinODE Mp = detail::example_target(fx, opt.data_dir, fx.f);
  json w = detail::operator_mismatch(Lp, Mp);
  Check& gc = rep.add("example.gauge_identity", w.is_null(),
                      "gauge(L, [1, f1]) equals exp_product(pullback(L_std, h), f, " + std::to_string(fx.lambda) + ")", w);
  gc.seconds = detail::seconds_since(t0);

  // The verifier must reject perturbed data.
  {
    RatFun f5 = fx.f * RatFun(QPoly(std::vector<Rat>{-7, 19}));
    json pw = detail::operator_mismatch(Lp, detail::example_target(fx, opt.data_dir, f5));
    Check& c = rep.add("example.perturbation.f_exponent", !pw.is_null(),
                       "exponent of (19t-7) in f changed from 6 to 5 is rejected", "identity unexpectedly holds");
    if (!pw.is_null()) c.witness = pw;
  }
  {
    RatFun alt = fx.linear_root(fx.p2);
    json pw = detail::operator_mismatch(gauge_transform(fx.L, {RatFun(1), alt}), Mp);
    Check& c = rep.add("example.perturbation.f1_p2_root", !pw.is_null(),
                       "f1 = " + alt.str() + " (root of p2) is rejected", "identity unexpectedly holds");
    if (!pw.is_null()) c.witness = pw;
  }

  if (opt.invariant_values) {
    auto dims = [](const std::vector<RatFun>& b) {
      json a = json::array();
      for (const auto& r : b) a.push_back(r.str());
      return json{{"dim", b.size()}, {"basis", a}};
    };
    auto same_span = [](const std::vector<RatFun>& b, const RatFun& r) {
      return b.size() == 1 && !r.is_zero() && (b[0] / r).is_constant();
    };
    auto t1 = clock::now();
    auto s4 = rational_solutions(symmetric_power(fx.L, 4));
    RatFun f4 = fx.eval(fx.f4_generic, RatFun(0));
    rep.add("example.quartic_value_f1_zero", same_span(s4, f4),
            "rational solutions of S^4(L) are spanned by " + f4.str(), dims(s4))
        .seconds = detail::seconds_since(t1);
    t1 = clock::now();
    auto s4p = rational_solutions(symmetric_power(Lp, 4));
    rep.add("example.quartic_value_vanishes", s4p.empty(), "rational solutions of S^4(L') are {0}", dims(s4p))
        .seconds = detail::seconds_since(t1);
    t1 = clock::now();
    auto s6p = rational_solutions(symmetric_power(Lp, 6));
    rep.add("example.sextic_value", same_span(s6p, fx.f), "rational solutions of S^6(L') are spanned by f", dims(s6p))
        .seconds = detail::seconds_since(t1);
    t1 = clock::now();
    auto g4 = rational_solutions(symmetric_power(gauge_transform(fx.L, {RatFun(1), RatFun::t()}), 4));
    rep.add("example.quartic_value_generic", g4.size() == 1, "with f1 = t the quartic value space is one-dimensional",
            dims(g4))
        .seconds = detail::seconds_since(t1);
  }

  if (opt.spans) {
    auto t1 = clock::now();
    SpanResult s6 = monomial_span_membership(Lp, 6, expand(fx.f, fx.base_point, 80));
    rep.add("example.sextic_span", s6.member, "f lies in the span of the degree-6 solution monomials of L'",
            json{{"rank", s6.rank}})
        .seconds = detail::seconds_since(t1);
    t1 = clock::now();
    const RatFun cube = fx.f.pow(7) * fx.h.scaled(1728);
    bool root_ok = fx.v.pow(3) == cube;
    rep.add("example.hauptmodul_cube", root_ok, "v^3 = 1728 f^7 h", json{{"v", fx.v.str()}});
    SpanResult s14 = monomial_span_membership(Lp, 14, expand(fx.v, fx.base_point, opt.span_order));
    rep.add("example.hauptmodul_span", s14.member,
            "v lies in the span of the degree-14 solution monomials of L' (order " + std::to_string(opt.span_order) + ")",
            json{{"rank", s14.rank}, {"primes", s14.primes}})
        .seconds = detail::seconds_since(t1);
  }

  if (opt.curve_probe) rep.add(curve_probe(fx));
  return rep;
}

struct ClosedForm {
  std::vector<RatFun> r;  // x = r_0 Y + r_1 Y' + r_2 Y'' with Y = f^(1/lambda) y(h)
  std::vector<RatFun> d;  // x = f^(1/lambda) (d_0 F + d_1 F' + d_2 F'') at h, F' = dF/dz
  Report report;
};

inline ClosedForm closed_form(const ExampleFixture& fx, const std::string& data_dir = default_data_dir()) {
  ClosedForm out;
  Report& rep = out.report;
  rep.command = "closed-form";
  const int n = fx.L.order();
  const auto& a = fx.L.coeffs();

  // Rows: the gauge vector and its derivatives reduced by L.
  std::vector<RatFun> v(n);
  v[0] = RatFun(1);
  v[1] = fx.f1;
  Matrix<RatFun> M(n, n, RatFun());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = v[j];
    std::vector<RatFun> w(n);
    for (int j = 0; j < n; ++j) w[j] = v[j].derivative() + (j > 0 ? v[j - 1] : RatFun()) - v[n - 1] * a[j];
    v = std::move(w);
  }
  Matrix<RatFun> Mt(n, n, RatFun());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Mt(i, j) = M(j, i);
  std::vector<RatFun> e0(n);
  e0[0] = RatFun(1);
  auto r = solve(Mt, e0);
  if (!r) throw DegenerateGauge("the matrix of the gauge vector and its derivatives is singular");
  out.r = *r;

  LinODE Mp = detail::example_target(fx, data_dir, fx.f);
  json w = detail::operator_mismatch(gauge_transform(Mp, out.r), fx.L);
  rep.add("closed_form.inverse_gauge", w.is_null(), "gauge(M', [r0, r1, r2]) = L", w);
  LinODE Lp = gauge_transform(fx.L, {RatFun(1), fx.f1});
  w = detail::operator_mismatch(gauge_transform(Lp, out.r), fx.L);
  rep.add("closed_form.round_trip", w.is_null(), "gauge(gauge(L, [1, f1]), [r0, r1, r2]) = L", w);

  // Y^(k) = f^(1/lambda) sum_j w_kj F^(j)(h), by the chain rule.
  const RatFun u = (fx.f.derivative() / fx.f).scaled(make_rat(1, fx.lambda));
  const RatFun hp = fx.h.derivative();
  std::vector<RatFun> wk(n);
  wk[0] = RatFun(1);
  out.d.assign(n, RatFun());
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) out.d[j] += out.r[k] * wk[j];
    std::vector<RatFun> next(n);
    for (int j = 0; j < n; ++j) next[j] = wk[j].derivative() + u * wk[j] + (j > 0 ? hp * wk[j - 1] : RatFun());
    wk = std::move(next);
  }

  // f^(1/lambda) / (t^e (t-1)^e') must be rational.
  const Rat lam(fx.lambda);
  auto q = detail::ratfun_root(
      fx.f * detail::t_power(-lam * fx.closed.exp_t) * detail::t1_power(-lam * fx.closed.exp_t1), fx.lambda);
  if (!q) {
    rep.add("closed_form.prefactor", false, "f^(1/lambda) differs from the printed prefactor by a non-rational factor");
    return out;
  }
  auto params = standard_equation(*parse_group(fx.standard), data_dir).params;
  // F' and F'' printed as the contiguous functions 3F2(a+k; b+k | z).
  std::vector<Rat> kappa(n, Rat(1));
  for (int k = 1; k < n; ++k) {
    Rat s = 1;
    for (const auto& x : params.upper) s *= x + (k - 1);
    for (const auto& x : params.lower) s /= x + (k - 1);
    kappa[k] = kappa[k - 1] * s;
  }
  auto ratios = [&](bool contiguous) {
    std::vector<RatFun> out_r;
    for (int j = 0; j < n; ++j) {
      RatFun x = *q * out.d[j] / fx.closed.coefficients[j];
      out_r.push_back(contiguous ? x.scaled(kappa[j]) : x);
    }
    return out_r;
  };
  auto summarize = [](const std::vector<RatFun>& rs) {
    json a = json::array();
    bool same = true;
    for (const auto& x : rs) {
      a.push_back(x.str());
      same = same && x.is_constant() && x == rs[0];
    }
    return std::make_pair(same, a);
  };
  auto [same_c, wc] = summarize(ratios(true));
  Check& rc = rep.add("closed_form.ratio_consistency", same_c,
                      "computed/printed coefficients of F, F', F'' share one scalar (F', F'' as contiguous 3F2)",
                      json{{"ratios", wc}});
  rc.witness = json{{"ratios", wc}};
  auto [same_l, wl] = summarize(ratios(false));
  Check lit;
  lit.name = "closed_form.ratio_literal_derivatives";
  lit.reading = "informational";
  lit.status = same_l ? Status::Pass : Status::Fail;
  lit.detail = "same comparison reading F', F'' as plain derivatives";
  lit.witness = json{{"ratios", wl}};
  rep.add(lit);
  if (same_c) {
    Rat s = ratios(true)[0].constant_value();
    Check k;
    k.name = "closed_form.printed_constant";
    k.reading = "informational";
    k.status = s == fx.closed.constant ? Status::Pass : Status::Fail;
    k.detail = "global scalar " + to_string(s) + " against the printed " + to_string(fx.closed.constant);
    k.witness = json{{"scalar", to_json(s)}};
    rep.add(k);
  }
  const QPoly fac = fx.closed.factor.num();
  QPoly d0 = (out.d[0] * *q).num();
  rep.add("closed_form.factor", (d0 % fac).is_zero(),
          "the coefficient of F contains the factor " + fx.closed.factor.str(), json{{"coefficient", d0.str()}});
  return out;
}

}  // namespace lode_atlas
