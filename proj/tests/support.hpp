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

// Shared fixtures for the unit and acceptance tests.

#ifndef TENDONSIM_TESTS_SUPPORT_HPP_
#define TENDONSIM_TESTS_SUPPORT_HPP_

#include <cmath>
#include <filesystem>
#include <numbers>

#include "tendonsim/config.hpp"
#include "tendonsim/types.hpp"

namespace tendonsim::testing {

inline std::filesystem::path source_dir() { return TENDONSIM_SOURCE_DIR; }

inline FingerConfig default_config() {
  return load_config_file(source_dir() / "fingers" / "default.json");
}

inline Finger default_finger() { return default_config().finger; }

inline constexpr double kSteelModulus = 200e9;
inline const double kWireArea = std::numbers::pi / 4.0 * 1e-6;  // 1 mm diameter

// Steel tendons on an arbitrary geometry; coupling rest lengths are filled
// from the wrap geometry.
Finger make_finger(std::array<double, 3> lengths, std::array<double, 3> radii,
                   std::array<double, 3> masses = {0.0, 0.0, 0.0},
                   double modulus = kSteelModulus);

inline FingerGeometry make_geometry(std::array<double, 3> lengths, std::array<double, 3> radii,
                                    std::array<double, 3> masses = {0.0, 0.0, 0.0}) {
  FingerGeometry g;
  g.link_lengths = lengths;
  g.guide_radii = radii;
  g.link_masses = masses;
  return g;
}

inline ExternalLoad tip_payload(double kg, double gravity = 9.81) {
  ExternalLoad load;
  load.force = Vec2(0.0, -kg * gravity);
  return load;
}

inline double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace tendonsim::testing

#endif  // TENDONSIM_TESTS_SUPPORT_HPP_
