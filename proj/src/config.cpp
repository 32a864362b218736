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

#include "tendonsim/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace tendonsim {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kConfig, msg); }

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(fmt::format("'{}' must be an object", where));
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || item.key() == a;
    if (!known) fail(fmt::format("unknown key '{}'", join(where, item.key())));
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(fmt::format("'{}' must be a number", where));
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(fmt::format("'{}' must be finite", where));
  return v;
}

std::array<double, 3> triple(const json& j, const std::string& where, double scale) {
  if (!j.is_array() || j.size() != 3) fail(fmt::format("'{}' must be an array of 3 numbers", where));
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = number(j[i], fmt::format("{}[{}]", where, i)) * scale;
  return out;
}

struct Units {
  double length = 1.0;   // meters per declared unit
  double mass = 1.0;     // kilograms per declared unit
  double modulus = 1.0;  // pascals per declared unit
};

double lookup(const json& j, const std::string& where,
              std::initializer_list<std::pair<const char*, double>> table) {
  if (!j.is_string()) fail(fmt::format("'{}' must be a string", where));
  const auto name = j.get<std::string>();
  for (const auto& [unit, factor] : table) {
    if (name == unit) return factor;
  }
  fail(fmt::format("'{}': unsupported unit '{}'", where, name));
}

Units parse_units(const json& doc) {
  if (!doc.contains("units")) fail("missing required key 'units'");
  const json& u = doc["units"];
  require_object(u, "units");
  reject_unknown(u, "units", {"length", "mass", "modulus"});
  for (const char* key : {"length", "mass", "modulus"}) {
    if (!u.contains(key)) fail(fmt::format("missing required key 'units.{}'", key));
  }
  Units units;
  units.length = lookup(u["length"], "units.length", {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}});
  units.mass = lookup(u["mass"], "units.mass", {{"kg", 1.0}, {"g", 1e-3}});
  units.modulus =
      lookup(u["modulus"], "units.modulus", {{"Pa", 1.0}, {"MPa", 1e6}, {"GPa", 1e9}});
  return units;
}

FingerGeometry parse_geometry(const json& g, const Units& units) {
  require_object(g, "geometry");
  reject_unknown(g, "geometry",
                 {"link_lengths", "guide_radii", "link_masses", "com_fractions", "gravity"});
  for (const char* key : {"link_lengths", "guide_radii", "link_masses"}) {
    if (!g.contains(key)) fail(fmt::format("missing required key 'geometry.{}'", key));
  }
  FingerGeometry geom;
  geom.link_lengths = triple(g["link_lengths"], "geometry.link_lengths", units.length);
  geom.guide_radii = triple(g["guide_radii"], "geometry.guide_radii", units.length);
  geom.link_masses = triple(g["link_masses"], "geometry.link_masses", units.mass);
  if (g.contains("com_fractions"))
    geom.com_fractions = triple(g["com_fractions"], "geometry.com_fractions", 1.0);
  if (g.contains("gravity")) geom.gravity = number(g["gravity"], "geometry.gravity");
  return geom;
}

TendonGroup parse_group(const json& j, const std::string& where) {
  if (j == "flexion") return TendonGroup::kFlexionA;
  if (j == "extension") return TendonGroup::kExtensionB;
  fail(fmt::format("'{}' must be \"flexion\" or \"extension\"", where));
}

constexpr std::initializer_list<const char*> kTendonKeys = {
    "group", "index", "youngs_modulus", "area", "diameter", "rest_length"};

// Fields of one tendon entry, with `defaults` filling in what is missing.
TendonSpec parse_tendon(const json& entry, const json& defaults, const std::string& where,
                        const Units& units) {
  require_object(entry, where);
  reject_unknown(entry, where, kTendonKeys);
  json merged = defaults;
  for (const auto& item : entry.items()) merged[item.key()] = item.value();

  TendonSpec spec;
  if (!merged.contains("group")) fail(fmt::format("missing required key '{}.group'", where));
  if (!merged.contains("index")) fail(fmt::format("missing required key '{}.index'", where));
  spec.group = parse_group(merged["group"], where + ".group");
  if (!merged["index"].is_number_integer())
    fail(fmt::format("'{}.index' must be an integer", where));
  spec.index = merged["index"].get<int>();
  if (spec.index < 1 || spec.index > 3) fail(fmt::format("'{}.index' must be 1, 2 or 3", where));

  if (!merged.contains("youngs_modulus"))
    fail(fmt::format("missing required key '{}.youngs_modulus'", where));
  spec.youngs_modulus = number(merged["youngs_modulus"], where + ".youngs_modulus") * units.modulus;

  const bool has_area = merged.contains("area");
  const bool has_diameter = merged.contains("diameter");
  if (has_area == has_diameter)
    fail(fmt::format("'{}' needs exactly one of 'area' or 'diameter'", where));
  if (has_area) {
    spec.cross_section_area = number(merged["area"], where + ".area") * units.length * units.length;
  } else {
    const double d = number(merged["diameter"], where + ".diameter") * units.length;
    spec.cross_section_area = std::numbers::pi / 4.0 * d * d;
  }

  if (spec.index == 1) {
    if (!merged.contains("rest_length"))
      fail(fmt::format("missing required key '{}.rest_length' (actuating tendon)", where));
    spec.rest_length = number(merged["rest_length"], where + ".rest_length") * units.length;
  } else if (merged.contains("rest_length")) {
    fail(fmt::format("'{}.rest_length' is not allowed: coupling tendon rest lengths follow "
                     "from the guide geometry",
                     where));
  }
  return spec;
}

TendonSet parse_tendons(const json& doc, const Units& units, const FingerGeometry& geom) {
  if (!doc.contains("tendons")) fail("missing required key 'tendons'");
  const json& list = doc["tendons"];
  json defaults = json::object();
  if (doc.contains("tendon_defaults")) {
    defaults = doc["tendon_defaults"];
    require_object(defaults, "tendon_defaults");
    reject_unknown(defaults, "tendon_defaults", kTendonKeys);
  }
  if (!list.is_array() || list.size() != 6) fail("'tendons' must be an array of 6 entries");

  std::array<std::array<bool, 3>, 2> seen{};
  TendonSet set;
  for (size_t n = 0; n < list.size(); ++n) {
    auto spec = parse_tendon(list[n], defaults, fmt::format("tendons[{}]", n), units);
    const int g = spec.group == TendonGroup::kFlexionA ? 0 : 1;
    if (seen[g][spec.index - 1]) {
      fail(fmt::format("tendons[{}]: duplicate tendon {}/{}", n, to_string(spec.group),
                       spec.index));
    }
    seen[g][spec.index - 1] = true;
    set.group(spec.group)[spec.index - 1] = spec;
  }

  const auto coupling = coupling_rest_lengths(geom);
  for (auto group : {TendonGroup::kFlexionA, TendonGroup::kExtensionB}) {
    set.group(group)[1].rest_length = coupling[0];
    set.group(group)[2].rest_length = coupling[1];
  }
  return set;
}

json read_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(fmt::format("{}: invalid JSON: {}", what, e.what()));
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SolverOptions parse_solver(const json& s, const Units& units) {
  require_object(s, "solver");
  reject_unknown(s, "solver", {"threshold", "max_iterations", "model"});
  SolverOptions options;
  if (s.contains("threshold")) {
    options.threshold = number(s["threshold"], "solver.threshold") * units.length;
    if (!(options.threshold > 0.0)) fail("'solver.threshold' must be > 0");
  }
  if (s.contains("max_iterations")) {
    if (!s["max_iterations"].is_number_integer() || s["max_iterations"].get<int>() < 1)
      fail("'solver.max_iterations' must be an integer >= 1");
    options.max_iterations = s["max_iterations"].get<int>();
  }
  if (s.contains("model")) {
    if (!s["model"].is_string()) fail("'solver.model' must be a string");
    try {
      options.model = statics_model_from_string(s["model"].get<std::string>());
    } catch (const Error& e) {
      fail(fmt::format("'solver.model': {}", e.what()));
    }
  }
  return options;
}

}  // namespace

FingerConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  const json doc = read_json(json_text, "config");
  require_object(doc, "config");
  reject_unknown(doc, "", {"name", "description", "units", "geometry", "tendons", "tendon_defaults", "solver"});
  const Units units = parse_units(doc);
  if (!doc.contains("geometry")) fail("missing required key 'geometry'");

  FingerConfig cfg;
  cfg.finger.geometry = parse_geometry(doc["geometry"], units);
  try {
    validate(cfg.finger.geometry);
  } catch (const Error& e) {
    fail(fmt::format("geometry: {}", e.what()));
  }

  if (doc.contains("tendons") && doc["tendons"].is_string()) {
    if (doc.contains("tendon_defaults"))
      fail("'tendon_defaults' must live in the referenced tendon document");
    const auto path = base_dir / doc["tendons"].get<std::string>();
    const json tdoc = read_json(read_file(path), path.string());
    require_object(tdoc, path.string());
    reject_unknown(tdoc, "", {"units", "tendons", "tendon_defaults"});
    cfg.finger.tendons = parse_tendons(tdoc, parse_units(tdoc), cfg.finger.geometry);
  } else {
    cfg.finger.tendons = parse_tendons(doc, units, cfg.finger.geometry);
  }
  try {
    validate(cfg.finger.tendons);
  } catch (const Error& e) {
    fail(fmt::format("tendons: {}", e.what()));
  }

  if (doc.contains("solver")) cfg.solver = parse_solver(doc["solver"], units);
  return cfg;
}

FingerConfig load_config_file(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

}  // namespace tendonsim
