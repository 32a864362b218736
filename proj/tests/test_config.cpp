// Copyright 2026 The tendonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include <json.hpp>

#include "support.hpp"
#include "tendonsim/config.hpp"
#include "tendonsim/statics.hpp"

using namespace tendonsim;
using namespace tendonsim::testing;
using nlohmann::json;

namespace {

json base_doc() {
  return json::parse(R"({
    "units": {"length": "mm", "mass": "g", "modulus": "GPa"},
    "geometry": {
      "link_lengths": [60, 60, 51],
      "guide_radii": [24, 18, 12],
      "link_masses": [10, 10, 10]
    },
    "tendon_defaults": {"youngs_modulus": 200, "diameter": 1},
    "tendons": [
      {"group": "flexion", "index": 1, "rest_length": 100},
      {"group": "flexion", "index": 2},
      {"group": "flexion", "index": 3},
      {"group": "extension", "index": 1, "rest_length": 100},
      {"group": "extension", "index": 2},
      {"group": "extension", "index": 3}
    ]
  })");
}

std::string config_error(const json& doc) {
  try {
    parse_config(doc.dump());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
    return e.what();
  }
  FAIL("expected a config error");
  return {};
}

bool contains(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("shipped default config parses to SI") {
  const auto cfg = default_config();
  const auto& g = cfg.finger.geometry;
  CHECK(g.link_lengths[0] == doctest::Approx(0.060));
  CHECK(g.total_length() == doctest::Approx(0.171));
  CHECK(g.guide_radii[2] == doctest::Approx(0.012));
  CHECK(g.link_masses[1] == doctest::Approx(0.010));
  const auto& t = cfg.finger.tendons.flexion[0];
  CHECK(t.youngs_modulus == doctest::Approx(200e9));
  CHECK(t.cross_section_area == doctest::Approx(std::numbers::pi / 4 * 1e-6));
  CHECK(t.rest_length == doctest::Approx(0.100));
  const auto rest = coupling_rest_lengths(g);
  CHECK(cfg.finger.tendons.extension[1].rest_length == rest[0]);
  CHECK(cfg.finger.tendons.flexion[2].rest_length == rest[1]);
  CHECK(cfg.solver.threshold == doctest::Approx(1e-6));
  CHECK(cfg.solver.max_iterations == 100);
  CHECK(cfg.solver.model == StaticsModel::kLiteral);
}

TEST_CASE("unit systems convert once at the boundary") {
  auto mm = base_doc();
  auto si = base_doc();
  si["units"] = {{"length", "m"}, {"mass", "kg"}, {"modulus", "Pa"}};
  si["geometry"]["link_lengths"] = {0.06, 0.06, 0.051};
  si["geometry"]["guide_radii"] = {0.024, 0.018, 0.012};
  si["geometry"]["link_masses"] = {0.01, 0.01, 0.01};
  si["tendon_defaults"] = {{"youngs_modulus", 200e9}, {"area", std::numbers::pi / 4 * 1e-6}};
  for (auto& t : si["tendons"])
    if (t.contains("rest_length")) t["rest_length"] = 0.1;
  const auto a = parse_config(mm.dump());
  const auto b = parse_config(si.dump());
  for (int i = 0; i < 3; ++i) {
    CHECK(a.finger.geometry.link_lengths[i] == doctest::Approx(b.finger.geometry.link_lengths[i]));
    CHECK(a.finger.geometry.guide_radii[i] == doctest::Approx(b.finger.geometry.guide_radii[i]));
    CHECK(a.finger.tendons.flexion[i].cross_section_area ==
          doctest::Approx(b.finger.tendons.flexion[i].cross_section_area));
  }
  auto cm = base_doc();
  cm["units"]["length"] = "cm";
  cm["units"]["modulus"] = "MPa";
  cm["geometry"]["link_lengths"] = {6, 6, 5.1};
  cm["geometry"]["guide_radii"] = {2.4, 1.8, 1.2};
  cm["tendon_defaults"] = {{"youngs_modulus", 200e3}, {"diameter", 0.1}};
  for (auto& t : cm["tendons"])
    if (t.contains("rest_length")) t["rest_length"] = 10;
  const auto c = parse_config(cm.dump());
  CHECK(c.finger.geometry.total_length() == doctest::Approx(0.171));
  CHECK(c.finger.tendons.flexion[0].youngs_modulus == doctest::Approx(200e9));
}

TEST_CASE("unknown keys are rejected by dotted path") {
  auto top = base_doc();
  top["colour"] = "red";
  CHECK(contains(config_error(top), "'colour'"));

  auto geo = base_doc();
  geo["geometry"]["link_length"] = {1, 2, 3};
  CHECK(contains(config_error(geo), "'geometry.link_length'"));

  auto ten = base_doc();
  ten["tendons"][4]["stiffness"] = 1;
  CHECK(contains(config_error(ten), "'tendons[4].stiffness'"));

  auto units = base_doc();
  units["units"]["time"] = "s";
  CHECK(contains(config_error(units), "'units.time'"));

  auto solver = base_doc();
  solver["solver"] = {{"tolerance", 1}};
  CHECK(contains(config_error(solver), "'solver.tolerance'"));
}

TEST_CASE("units block is required and checked") {
  auto missing = base_doc();
  missing.erase("units");
  CHECK(contains(config_error(missing), "units"));

  auto bad = base_doc();
  bad["units"]["length"] = "inch";
  CHECK(contains(config_error(bad), "inch"));

  auto partial = base_doc();
  partial["units"].erase("mass");
  CHECK(contains(config_error(partial), "units.mass"));
}

TEST_CASE("tendon entries are validated") {
  auto both = base_doc();
  both["tendons"][0]["area"] = 0.7;
  CHECK(contains(config_error(both), "exactly one"));

  auto coupling_rest = base_doc();
  coupling_rest["tendons"][1]["rest_length"] = 20;
  CHECK(contains(config_error(coupling_rest), "tendons[1].rest_length"));

  auto dup = base_doc();
  dup["tendons"][2]["index"] = 2;
  CHECK(contains(config_error(dup), "duplicate"));

  auto few = base_doc();
  few["tendons"].erase(5);
  CHECK(contains(config_error(few), "6 entries"));

  auto group = base_doc();
  group["tendons"][0]["group"] = "A";
  CHECK(contains(config_error(group), "tendons[0].group"));

  auto no_rest = base_doc();
  no_rest["tendons"][3].erase("rest_length");
  CHECK(contains(config_error(no_rest), "tendons[3].rest_length"));

  auto soft = base_doc();
  soft["tendons"][0]["youngs_modulus"] = -1;
  config_error(soft);
}

TEST_CASE("geometry invariants hold after conversion") {
  auto wide = base_doc();
  wide["geometry"]["guide_radii"] = {40, 30, 12};
  CHECK(contains(config_error(wide), "geometry"));

  auto neg = base_doc();
  neg["geometry"]["link_masses"] = {10, -1, 10};
  config_error(neg);

  auto shape = base_doc();
  shape["geometry"]["link_lengths"] = {60, 60};
  CHECK(contains(config_error(shape), "geometry.link_lengths"));
}

TEST_CASE("solver block") {
  auto doc = base_doc();
  doc["solver"] = {{"threshold", 0.01}, {"max_iterations", 7}, {"model", "virtual-work"}};
  const auto cfg = parse_config(doc.dump());
  CHECK(cfg.solver.threshold == doctest::Approx(1e-5));
  CHECK(cfg.solver.max_iterations == 7);
  CHECK(cfg.solver.model == StaticsModel::kVirtualWork);

  doc["solver"] = {{"threshold", 0}};
  CHECK(contains(config_error(doc), "solver.threshold"));
  doc["solver"] = {{"max_iterations", 0}};
  CHECK(contains(config_error(doc), "solver.max_iterations"));
  doc["solver"] = {{"model", "exact"}};
  CHECK(contains(config_error(doc), "solver.model"));
}

TEST_CASE("tendons may live in a separate document") {
  const auto dir = std::filesystem::temp_directory_path() / "tendonsim_config_test";
  std::filesystem::create_directories(dir);
  auto doc = base_doc();
  json tendons;
  tendons["units"] = doc["units"];
  tendons["tendon_defaults"] = doc["tendon_defaults"];
  tendons["tendons"] = doc["tendons"];
  std::ofstream(dir / "tendons.json") << tendons.dump(2);
  doc["tendons"] = "tendons.json";
  doc.erase("tendon_defaults");
  std::ofstream(dir / "finger.json") << doc.dump(2);

  const auto cfg = load_config_file(dir / "finger.json");
  CHECK(cfg.finger.tendons.extension[0].rest_length == doctest::Approx(0.1));

  doc["tendons"] = "missing.json";
  std::ofstream(dir / "finger.json") << doc.dump(2);
  try {
    load_config_file(dir / "finger.json");
    FAIL("expected an IO error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("unreadable and malformed documents") {
  try {
    load_config_file("/nonexistent/finger.json");
    FAIL("expected an IO error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
  try {
    parse_config("{ not json");
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
  }
}
