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

// Command-line front end. Exit codes: 0 all requested checks pass, 1 a check
// failed, 2 usage error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lode_atlas/commands.hpp"

namespace la = lode_atlas;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<la::GroupId> groups_from(const std::string& s, bool standard_only = false) {
  if (s == "all") {
    if (!standard_only) return la::all_groups();
    return {la::GroupId::G168, la::GroupId::H216SL3, la::GroupId::F36SL3, la::GroupId::A6SL3, la::GroupId::A5};
  }
  auto g = la::parse_group(s);
  if (!g) throw UsageError("unknown group '" + s + "'");
  return {*g};
}

la::LinODE operator_from(const std::string& file, const std::string& group, const std::string& data_dir) {
  if (!file.empty() && !group.empty()) throw UsageError("give either --op or --group");
  if (!file.empty()) {
    try {
      return la::linode_from_json(la::load_json_file(file));
    } catch (const la::error& e) {
      throw UsageError(e.what());
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(file + ": " + e.what());
    }
  }
  if (group.empty()) throw UsageError("an operator is required (--op <file> or --group <id>)");
  return la::standard_equation(groups_from(group).at(0), data_dir).op;
}

std::set<std::string> split_checks(const std::string& s) {
  std::set<std::string> out;
  std::stringstream in(s);
  std::string item;
  const std::set<std::string> known{"series", "constant", "unit", "curve", "square", "hauptmodul"};
  while (std::getline(in, item, ',')) {
    if (!known.count(item)) throw UsageError("unknown check '" + item + "'");
    out.insert(item);
  }
  return out;
}

void print(const la::Report& rep, bool as_json) {
  if (as_json) {
    std::cout << rep.to_json().dump(2) << "\n";
    return;
  }
  for (const auto& c : rep.checks) {
    std::string st = la::status_name(c.status);
    for (auto& ch : st) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    std::cout << st << "  " << c.name;
    if (c.reading != "printed") std::cout << " (" << c.reading << ")";
    if (!c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << "\n";
    if (c.status == la::Status::Fail && !c.witness.is_null()) std::cout << "      witness: " << c.witness.dump() << "\n";
  }
  static const std::set<std::string> show{"molien", "sympower", "ratsols", "closed-form"};
  if (!rep.data.is_null() && show.count(rep.command)) std::cout << rep.data.dump(2) << "\n";
  std::cout << (rep.all_pass() ? "all checks pass" : "some checks FAILED") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lode-atlas: exact verification of hypergeometric standard equations for SL3 groups"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  bool as_json = false;
  std::string data_dir = la::default_data_dir();
  app.add_flag("--json", as_json, "emit the machine-readable report");
  app.add_option("--fixtures", data_dir, "data directory with the fixture files");

  std::string group_id = "all";
  auto* c_group = app.add_subcommand("group", "enumerate a group and check its orders");
  c_group->add_option("--id", group_id, "group id (g168, g168xc3, h216, h72, f36, a6, a5, a5xc3 or all)");

  std::string inv_group = "all";
  bool with_polys = false;
  auto* c_inv = app.add_subcommand("invariants", "invariance, syzygies and identities of the invariant generators");
  c_inv->add_option("--group", inv_group, "group id or all");
  c_inv->add_flag("--polys", with_polys, "include the expanded polynomials");

  std::string mol_group = "g168";
  int up_to = 12;
  auto* c_mol = app.add_subcommand("molien", "Molien series coefficients");
  c_mol->add_option("--group", mol_group, "group id");
  c_mol->add_option("--up-to", up_to, "last degree")->check(CLI::Range(0, 200));

  std::string op_file, op_group;
  int degree = 0;
  auto* c_sym = app.add_subcommand("sympower", "symmetric power of an operator");
  c_sym->add_option("--op", op_file, "operator JSON file");
  c_sym->add_option("--group", op_group, "use the standard operator of this group");
  c_sym->add_option("--d", degree, "degree")->required()->check(CLI::Range(1, 64));

  int rs_degree = 1;
  auto* c_rat = app.add_subcommand("ratsols", "rational solutions of an operator or of its symmetric power");
  c_rat->add_option("--op", op_file, "operator JSON file");
  c_rat->add_option("--group", op_group, "use the standard operator of this group");
  c_rat->add_option("--sympower", rs_degree, "symmetric power degree")->check(CLI::Range(1, 64));

  std::string vs_group = "all", checks = "series,constant,unit,curve,square", reading = "all";
  bool stretch = false;
  int series_order = 63;
  auto* c_vs = app.add_subcommand("verify-standard", "verify the standard equations");
  c_vs->add_option("--group", vs_group, "group id or all");
  c_vs->add_option("--checks", checks, "comma list of series,constant,unit,curve,square,hauptmodul");
  c_vs->add_option("--reading", reading, "printed, alternative or all")
      ->check(CLI::IsMember({"printed", "alternative", "all"}));
  c_vs->add_option("--order", series_order, "series truncation order")->check(CLI::Range(4, 2000));
  c_vs->add_flag("--stretch", stretch, "also run the stretch unit check (A6, several minutes)");

  bool quick = false;
  auto* c_ex = app.add_subcommand("verify-example", "verify the worked example");
  c_ex->add_flag("--quick", quick, "only the operator identity and perturbations");

  auto* c_cf = app.add_subcommand("closed-form", "closed-form solution of the worked example");

  auto* c_all = app.add_subcommand("verify-all", "every check");
  c_all->add_flag("--stretch", stretch, "include the stretch unit check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  la::Report rep;
  try {
    auto standard = [&](const std::string& g, la::VerifyOptions opt) {
      la::Report r;
      r.command = "verify-standard";
      for (la::GroupId id : groups_from(g, true)) {
        std::vector<la::StandardEquation> eqs;
        try {
          eqs = la::standard_readings(id, data_dir);
        } catch (const la::NoHypergeometricStandard& e) {
          r.add(la::group_name(id) + ".standard", false, e.what());
          continue;
        }
        for (const auto& eq : eqs)
          if (reading == "all" || eq.reading == reading) r.append(la::verify_standard(eq, opt));
      }
      return r;
    };
    auto example_opts = [&]() {
      la::ExampleOptions o;
      o.data_dir = data_dir;
      if (quick) o.invariant_values = o.spans = o.curve_probe = false;
      return o;
    };
    if (*c_group) {
      rep.command = "group";
      json data = json::array();
      for (auto id : groups_from(group_id)) {
        la::Report r = la::group_report(id);
        rep.append(r);
        data.push_back(r.data);
      }
      rep.data = data.size() == 1 ? data[0] : data;
    } else if (*c_inv) {
      rep.command = "invariants";
      json data = json::array();
      for (auto id : groups_from(inv_group)) {
        if (id == la::GroupId::G168xC3 || id == la::GroupId::A5xC3) {
          if (inv_group == "all") continue;  // same set as the base group
        }
        la::Report r = la::invariants_report(id, data_dir, with_polys);
        rep.append(r);
        data.push_back(r.data);
      }
      rep.data = data.size() == 1 ? data[0] : data;
    } else if (*c_mol) {
      rep = la::molien_report(groups_from(mol_group).at(0), up_to);
    } else if (*c_sym) {
      la::LinODE L = operator_from(op_file, op_group, data_dir);
      la::SymPowerStats st;
      la::LinODE S = la::symmetric_power(L, degree, &st);
      rep.command = "sympower";
      rep.add("sympower.certified", true,
              "order " + std::to_string(S.order()) + " from " + std::to_string(st.monomials) + " monomials");
      rep.data = {{"operator", la::to_json(S)}, {"order", S.order()}, {"primes", st.primes}};
    } else if (*c_rat) {
      la::LinODE L = operator_from(op_file, op_group, data_dir);
      if (rs_degree > 1) L = la::symmetric_power(L, rs_degree);
      auto basis = la::rational_solutions(L);
      rep.command = "ratsols";
      json b = json::array();
      for (const auto& r : basis) b.push_back(la::to_json(r));
      rep.add("ratsols.verified", true, "every basis element is annihilated exactly");
      rep.data = {{"dim", basis.size()}, {"basis", b}};
    } else if (*c_vs) {
      la::VerifyOptions opt;
      opt.checks = split_checks(checks);
      opt.stretch = stretch;
      opt.series_order = series_order;
      rep = standard(vs_group, opt);
    } else if (*c_ex) {
      rep = la::verify_example(la::load_example(data_dir), example_opts());
    } else if (*c_cf) {
      la::ClosedForm cf = la::closed_form(la::load_example(data_dir), data_dir);
      rep = cf.report;
      json r = json::array(), d = json::array();
      for (const auto& x : cf.r) r.push_back(la::to_json(x));
      for (const auto& x : cf.d) d.push_back(la::to_json(x));
      rep.data = {{"r", r}, {"coefficients_at_h", d}};
    } else if (*c_all) {
      rep.command = "verify-all";
      for (auto id : la::all_groups()) rep.append(la::group_report(id));
      for (auto id : groups_from("all"))
        if (id != la::GroupId::G168xC3 && id != la::GroupId::A5xC3) rep.append(la::invariants_report(id, data_dir));
      la::VerifyOptions opt;
      opt.stretch = stretch;
      rep.append(standard("all", opt));
      la::ExampleFixture fx = la::load_example(data_dir);
      rep.append(la::verify_example(fx, example_opts()));
      rep.append(la::closed_form(fx, data_dir).report);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const la::error& e) {
    rep.add(rep.command.empty() ? "error" : rep.command + ".error", false, e.what(), json{{"kind", e.kind()}});
    print(rep, as_json);
    std::cerr << e.what() << "\n";
    return 1;
  }
  print(rep, as_json);
  return rep.all_pass() ? 0 : 1;
}
