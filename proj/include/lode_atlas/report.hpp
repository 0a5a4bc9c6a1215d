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

// Machine-readable check reports. A failing check always carries a witness.

#include <string>
#include <vector>

#include "json.hpp"

namespace lode_atlas {

enum class Status { Pass, Fail, Skipped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

struct Check {
  std::string name;
  Status status = Status::Skipped;
  std::string detail;
  // "printed" for the data as published, "alternative" for a labeled
  // correction, "informational" for probes that never affect the outcome.
  std::string reading = "printed";
  nlohmann::json witness;  // null when nothing to show
  double seconds = 0;
};

struct Report {
  static constexpr const char* schema = "lode-atlas/report/v1";
  std::string command;
  std::vector<Check> checks;
  nlohmann::json data;  // command output (operators, bases, series), if any

  Check& add(Check c) {
    if (c.status == Status::Fail && c.witness.is_null()) c.witness = c.detail;
    checks.push_back(std::move(c));
    return checks.back();
  }
  Check& add(std::string name, bool ok, std::string detail, nlohmann::json witness = nullptr) {
    Check c;
    c.name = std::move(name);
    c.status = ok ? Status::Pass : Status::Fail;
    c.detail = std::move(detail);
    if (!ok) c.witness = std::move(witness);
    return add(std::move(c));
  }
  Check& skip(std::string name, std::string why) {
    Check c;
    c.name = std::move(name);
    c.detail = std::move(why);
    return add(std::move(c));
  }
  void append(const Report& o) {
    for (const auto& c : o.checks) checks.push_back(c);
  }

  // Alternative readings and informational probes never decide the outcome.
  bool all_pass() const {
    for (const auto& c : checks)
      if (c.status == Status::Fail && c.reading != "alternative" && c.reading != "informational") return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  // Timings are left out so that repeated runs are byte-identical.
  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json j = {{"name", c.name}, {"status", status_name(c.status)}, {"reading", c.reading}};
      if (!c.detail.empty()) j["detail"] = c.detail;
      if (!c.witness.is_null()) j["witness"] = c.witness;
      arr.push_back(std::move(j));
    }
    nlohmann::json out = {{"schema", schema}, {"command", command}, {"all_pass", all_pass()}, {"checks", arr}};
    if (!data.is_null()) out["data"] = data;
    return out;
  }
};

}  // namespace lode_atlas
