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

#include "tendonsim/types.hpp"

#include <cmath>

#include <fmt/format.h>

namespace tendonsim {
namespace {

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorCode::kInvalidArgument, msg);
}

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kConfig: return "config_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kRangeExceeded: return "range_exceeded";
    case ErrorCode::kGeometryInfeasible: return "geometry_infeasible";
    case ErrorCode::kTensionInfeasible: return "tension_infeasible";
    case ErrorCode::kNoConvergence: return "no_convergence";
    case ErrorCode::kResolutionTooLow: return "resolution_too_low";
    case ErrorCode::kEmptyCloud: return "empty_cloud";
    case ErrorCode::kBoundaryMinimum: return "boundary_minimum";
  }
  return "unknown";
}

const char* to_string(TendonGroup group) {
  return group == TendonGroup::kFlexionA ? "flexion_a" : "extension_b";
}

void validate(const FingerGeometry& geom) {
  for (int i = 0; i < kNumLinks; ++i) {
    if (!(geom.link_lengths[i] > 0.0) || !std::isfinite(geom.link_lengths[i]))
      invalid(fmt::format("link_lengths[{}] must be > 0", i));
    if (!(geom.guide_radii[i] > 0.0) || !std::isfinite(geom.guide_radii[i]))
      invalid(fmt::format("guide_radii[{}] must be > 0", i));
    if (!(geom.link_masses[i] >= 0.0) || !std::isfinite(geom.link_masses[i]))
      invalid(fmt::format("link_masses[{}] must be >= 0", i));
    if (!(geom.com_fractions[i] >= 0.0 && geom.com_fractions[i] <= 1.0))
      invalid(fmt::format("com_fractions[{}] must lie in [0, 1]", i));
  }
  if (!(geom.guide_radii[0] + geom.guide_radii[1] < geom.link_lengths[0]))
    invalid("guide_radii[0] + guide_radii[1] must be < link_lengths[0]");
  if (!(geom.guide_radii[1] + geom.guide_radii[2] < geom.link_lengths[1]))
    invalid("guide_radii[1] + guide_radii[2] must be < link_lengths[1]");
  if (!(geom.gravity >= 0.0) || !std::isfinite(geom.gravity))
    invalid("gravity must be finite and >= 0");
}

void validate(const TendonSpec& spec) {
  const auto where = fmt::format("tendon {}/{}", to_string(spec.group), spec.index);
  if (!(spec.youngs_modulus > 0.0) || !std::isfinite(spec.youngs_modulus))
    invalid(where + ": youngs_modulus must be > 0");
  if (!(spec.cross_section_area > 0.0) || !std::isfinite(spec.cross_section_area))
    invalid(where + ": cross_section_area must be > 0");
  if (!(spec.rest_length > 0.0) || !std::isfinite(spec.rest_length))
    invalid(where + ": rest_length must be > 0");
  if (spec.index < 1 || spec.index > 3) invalid(where + ": index must be 1..3");
}

void validate(const TendonSet& tendons) {
  for (auto group : {TendonGroup::kFlexionA, TendonGroup::kExtensionB}) {
    const auto& specs = tendons.group(group);
    for (int i = 0; i < kNumLinks; ++i) {
      validate(specs[i]);
      if (specs[i].group != group || specs[i].index != i + 1) {
        invalid(fmt::format("tendon slot {}/{} holds {}/{}", to_string(group),
                            i + 1, to_string(specs[i].group), specs[i].index));
      }
    }
  }
}

void validate(const ExternalLoad& load) {
  if (!load.force.allFinite() || !std::isfinite(load.moment))
    invalid("external load must be finite");
  if (load.application_point && !load.application_point->allFinite())
    invalid("load application point must be finite");
}

}  // namespace tendonsim
