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

// Domain types shared by every module. All quantities are SI: meters,
// newtons, radians, kilograms. Joint angles are relative (angle of link i
// with respect to link i-1); the absolute angle of link i is the cumulative
// sum theta_1 + ... + theta_i, positive counter-clockwise.

#ifndef TENDONSIM_TYPES_HPP_
#define TENDONSIM_TYPES_HPP_

#include <array>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace tendonsim {

using Vec2 = Eigen::Vector2d;

inline constexpr int kNumLinks = 3;
inline constexpr double kTheta1Limit = std::numbers::pi / 2.0;

enum class ErrorCode {
  kInvalidArgument,
  kConfig,
  kIo,
  kRangeExceeded,
  kGeometryInfeasible,
  kTensionInfeasible,
  kNoConvergence,
  kResolutionTooLow,
  kEmptyCloud,
  kBoundaryMinimum,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct FingerGeometry {
  std::array<double, 3> link_lengths{};
  std::array<double, 3> guide_radii{};
  std::array<double, 3> link_masses{};
  std::array<double, 3> com_fractions{0.5, 0.5, 0.5};
  double gravity = 9.81;

  double total_length() const {
    return link_lengths[0] + link_lengths[1] + link_lengths[2];
  }
};

// Throws kInvalidArgument naming the first violated invariant.
void validate(const FingerGeometry& geom);

// Flexion group A (tendons 1-3) produces positive joint moments; extension
// group B (tendons 4-6) produces negative ones.
enum class TendonGroup { kFlexionA, kExtensionB };

const char* to_string(TendonGroup group);

// +1 for the flexion group, -1 for the extension group.
inline double restoring_sign(TendonGroup group) {
  return group == TendonGroup::kFlexionA ? 1.0 : -1.0;
}

inline TendonGroup opposite(TendonGroup group) {
  return group == TendonGroup::kFlexionA ? TendonGroup::kExtensionB
                                         : TendonGroup::kFlexionA;
}

struct TendonSpec {
  double youngs_modulus = 0.0;
  double cross_section_area = 0.0;
  double rest_length = 0.0;
  TendonGroup group = TendonGroup::kFlexionA;
  int index = 1;  // 1..3 within the group

  double axial_stiffness() const { return youngs_modulus * cross_section_area; }
};

void validate(const TendonSpec& spec);

// All six tendons of a finger, indexed by group then joint (0-based).
struct TendonSet {
  std::array<TendonSpec, 3> flexion;
  std::array<TendonSpec, 3> extension;

  const std::array<TendonSpec, 3>& group(TendonGroup g) const {
    return g == TendonGroup::kFlexionA ? flexion : extension;
  }
  std::array<TendonSpec, 3>& group(TendonGroup g) {
    return g == TendonGroup::kFlexionA ? flexion : extension;
  }
};

// Checks each spec and the one-tendon-per-(group, index) rule.
void validate(const TendonSet& tendons);

struct Configuration {
  double q = 0.0;
  std::array<double, 3> theta{};
};

struct FingertipState {
  Vec2 position = Vec2::Zero();
  // Origins of joints 1..3 followed by the fingertip E.
  std::array<Vec2, 4> joint_positions{Vec2::Zero(), Vec2::Zero(),
                                      Vec2::Zero(), Vec2::Zero()};
};

struct ExternalLoad {
  Vec2 force = Vec2::Zero();
  double moment = 0.0;
  // Unset means the fingertip E. Otherwise a base-frame point taken at the
  // nominal pose and carried rigidly by link 3.
  std::optional<Vec2> application_point;
};

void validate(const ExternalLoad& load);

// A complete finger definition as read from a config document.
struct Finger {
  FingerGeometry geometry;
  TendonSet tendons;
};

}  // namespace tendonsim

#endif  // TENDONSIM_TYPES_HPP_
