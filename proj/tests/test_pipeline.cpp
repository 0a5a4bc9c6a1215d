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

#include <filesystem>
#include <fstream>

#include "lode_atlas/pipeline.hpp"

namespace la = lode_atlas;
namespace fs = std::filesystem;
using la::Rat;
using la::RatFun;
using la::Status;

namespace {

const la::ExampleFixture& fixture() {
  static const la::ExampleFixture fx = la::load_example();
  return fx;
}

la::ExampleOptions quick() {
  la::ExampleOptions o;
  o.invariant_values = o.spans = o.curve_probe = false;
  return o;
}

// A copy of the data directory whose example fixture is edited by fn.
fs::path tampered(const std::function<void(la::json&)>& fn) {
  fs::path dir = fs::temp_directory_path() / ("lode_atlas_fixture_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(dir);
  for (const auto& e : fs::directory_iterator(la::default_data_dir()))
    fs::copy_file(e.path(), dir / e.path().filename(), fs::copy_options::overwrite_existing);
  la::json j = la::load_json_file((dir / "example.json").string());
  fn(j);
  std::ofstream(dir / "example.json") << j.dump(2);
  return dir;
}

}  // namespace

TEST(Fixture, ChecksumIsVerified) {
  EXPECT_EQ(fixture().checksum, "fnv1a64:1e2258e554c71ea2");
  EXPECT_EQ(la::fnv1a64(""), 14695981039346656037ULL);
  fs::path dir = tampered([](la::json& j) { j["fixture"]["lambda"] = 5; });
  EXPECT_THROW(la::load_example(dir.string()), la::FixtureError);
  // Resealing with the new checksum makes it loadable again.
  fs::path ok = tampered([](la::json& j) {
    j["fixture"]["name"] = "renamed";
    j["checksum"] = la::fixture_checksum(j["fixture"]);
  });
  EXPECT_EQ(la::load_example(ok.string()).name, "renamed");
  fs::remove_all(dir);
}

TEST(Fixture, ExpressionsInF1) {
  const auto& fx = fixture();
  EXPECT_TRUE(fx.eval(fx.p1, fx.f1).is_zero());
  EXPECT_EQ(fx.linear_root(fx.p1), fx.f1);
}

TEST(Roots, ExactRoots) {
  EXPECT_EQ(*la::detail::rat_root(Rat(-8, 27), 3), Rat(-2, 3));
  EXPECT_FALSE(la::detail::rat_root(Rat(-4), 2).has_value());
  EXPECT_FALSE(la::detail::rat_root(Rat(2), 3).has_value());
  RatFun r = la::parse_ratfun("(t-1)^2*(19*t-7)/(t^3*(t+3))");
  EXPECT_EQ(*la::detail::ratfun_root(r.pow(6), 6), r);
  EXPECT_FALSE(la::detail::ratfun_root(r.pow(6) * RatFun::t(), 6).has_value());
}

TEST(Example, OperatorIdentity) {
  la::Report rep = la::verify_example(fixture(), quick());
  for (const char* name : {"example.fixture", "example.f1_root", "example.gauge_identity",
                           "example.perturbation.f_exponent", "example.perturbation.f1_p2_root"}) {
    const la::Check* c = rep.find(name);
    ASSERT_NE(c, nullptr) << name;
    EXPECT_EQ(c->status, Status::Pass) << name << ": " << c->detail;
  }
  EXPECT_TRUE(rep.all_pass());
}

TEST(Example, PerturbedOperatorIsRejected) {
  la::ExampleFixture fx = fixture();
  fx.lambda = 5;
  la::Report rep = la::verify_example(fx, quick());
  EXPECT_EQ(rep.find("example.gauge_identity")->status, Status::Fail);
  EXPECT_TRUE(rep.find("example.gauge_identity")->witness.contains("coeff"));
}

TEST(ClosedForm, InverseGaugeAndRatios) {
  la::ClosedForm cf = la::closed_form(fixture());
  for (const char* name : {"closed_form.inverse_gauge", "closed_form.round_trip", "closed_form.ratio_consistency",
                           "closed_form.factor"}) {
    const la::Check* c = cf.report.find(name);
    ASSERT_NE(c, nullptr) << name;
    EXPECT_EQ(c->status, Status::Pass) << name;
  }
  EXPECT_EQ(cf.report.find("closed_form.printed_constant")->reading, "informational");
  EXPECT_EQ(cf.r.size(), 3u);
  EXPECT_TRUE(cf.report.all_pass());
}
