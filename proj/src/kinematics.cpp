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

#include "tendonsim/kinematics.hpp"

#include <cmath>

#include <fmt/format.h>

namespace tendonsim {

void check_theta1(double theta1) {
  if (!(theta1 >= -kTheta1Limit && theta1 <= kTheta1Limit)) {
    throw Error(ErrorCode::kRangeExceeded,
                fmt::format("theta1 = {:.6f} rad is outside [-pi/2, pi/2]",
                            theta1));
  }
}

Configuration coupling_angles(double q, const FingerGeometry& geom) {
  Configuration config;
  config.q = q;
  for (int i = 0; i < kNumLinks; ++i) config.theta[i] = q / geom.guide_radii[i];
  check_theta1(config.theta[0]);
  return config;
}

std::array<double, 3> cumulative_angles(const std::array<double, 3>& theta) {
  std::array<double, 3> phi{};
  double sum = 0.0;
  for (int i = 0; i < kNumLinks; ++i) {
    sum += theta[i];
    phi[i] = sum;
  }
  return phi;
}

FingertipState forward_kinematics(const Configuration& config,
                                  const FingerGeometry& geom) {
  const auto phi = cumulative_angles(config.theta);
  FingertipState state;
  Vec2 p = Vec2::Zero();
  state.joint_positions[0] = p;
  for (int i = 0; i < kNumLinks; ++i) {
    p += geom.link_lengths[i] * Vec2(std::cos(phi[i]), std::sin(phi[i]));
    state.joint_positions[i + 1] = p;
  }
  state.position = p;
  return state;
}

FingertipState fingertip_from_displacement(double q,
                                           const FingerGeometry& geom) {
  return forward_kinematics(coupling_angles(q, geom), geom);
}

Vec2 jacobian(double q, const FingerGeometry& geom) {
  const auto config = coupling_angles(q, geom);
  const auto phi = cumulative_angles(config.theta);
  // d(phi_i)/dq = sum_{j<=i} 1/R_j; each link contributes L_i * dphi_i/dq.
  Vec2 j = Vec2::Zero();
  double rate = 0.0;
  for (int i = 0; i < kNumLinks; ++i) {
    rate += 1.0 / geom.guide_radii[i];
    j += geom.link_lengths[i] * rate * Vec2(-std::sin(phi[i]), std::cos(phi[i]));
  }
  return j;
}

std::array<Vec2, 3> link_coms(const Configuration& config,
                              const FingerGeometry& geom) {
  const auto tip = forward_kinematics(config, geom);
  std::array<Vec2, 3> coms;
  for (int i = 0; i < kNumLinks; ++i) {
    const Vec2& a = tip.joint_positions[i];
    const Vec2& b = tip.joint_positions[i + 1];
    coms[i] = a + geom.com_fractions[i] * (b - a);
  }
  return coms;
}

}  // namespace tendonsim
