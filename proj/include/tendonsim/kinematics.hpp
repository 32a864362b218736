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

#ifndef TENDONSIM_KINEMATICS_HPP_
#define TENDONSIM_KINEMATICS_HPP_

#include "tendonsim/types.hpp"

namespace tendonsim {

/// Synchronous coupling law: every joint turns by q / R_i.
/// Throws kRangeExceeded when theta_1 leaves [-pi/2, pi/2].
Configuration coupling_angles(double q, const FingerGeometry& geom);

/// Planar forward kinematics with cumulative link angles.
FingertipState forward_kinematics(const Configuration& config,
                                  const FingerGeometry& geom);

FingertipState fingertip_from_displacement(double q,
                                           const FingerGeometry& geom);

/// d(x, y)/dq along the coupled trajectory.
Vec2 jacobian(double q, const FingerGeometry& geom);

// Absolute angle of each link, theta_1 + ... + theta_i.
std::array<double, 3> cumulative_angles(const std::array<double, 3>& theta);

// Center of mass of each link in the base frame.
std::array<Vec2, 3> link_coms(const Configuration& config,
                              const FingerGeometry& geom);

// Throws kRangeExceeded if theta_1 is outside [-pi/2, pi/2].
void check_theta1(double theta1);

}  // namespace tendonsim

#endif  // TENDONSIM_KINEMATICS_HPP_
