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

#include "support.hpp"

#include "tendonsim/statics.hpp"

namespace tendonsim::testing {

Finger make_finger(std::array<double, 3> lengths, std::array<double, 3> radii,
                   std::array<double, 3> masses, double modulus) {
  Finger f;
  f.geometry = make_geometry(lengths, radii, masses);
  const auto rest = coupling_rest_lengths(f.geometry);
  for (auto group : {TendonGroup::kFlexionA, TendonGroup::kExtensionB}) {
    auto& specs = f.tendons.group(group);
    for (int i = 0; i < 3; ++i) {
      specs[i].youngs_modulus = modulus;
      specs[i].cross_section_area = kWireArea;
      specs[i].group = group;
      specs[i].index = i + 1;
    }
    specs[0].rest_length = 0.100;
    specs[1].rest_length = rest[0];
    specs[2].rest_length = rest[1];
  }
  return f;
}

}  // namespace tendonsim::testing
