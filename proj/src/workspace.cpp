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

#include "tendonsim/workspace.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>
#include <json.hpp>

#include "tendonsim/kinematics.hpp"

namespace tendonsim {

std::array<Vec2, 2> WorkspaceCloud::bounding_box() const {
  if (size() == 0) throw Error(ErrorCode::kEmptyCloud, "workspace cloud has no points");
  Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  for (const auto& pts : links) {
    for (const auto& p : pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  return {lo, hi};
}

WorkspaceCloud sweep_workspace(const FingerGeometry& geom, int resolution) {
  if (resolution < 2) {
    throw Error(ErrorCode::kResolutionTooLow,
                fmt::format("resolution {} is below the minimum of 2", resolution));
  }
  for (int i = 0; i < kNumLinks; ++i) {
    if (!(geom.link_lengths[i] >= 0.0) || !(geom.guide_radii[i] > 0.0))
      throw Error(ErrorCode::kInvalidArgument, "workspace needs L_i >= 0 and R_i > 0");
  }

  const int n = resolution;
  const double span = static_cast<double>(n - 1);
  WorkspaceCloud cloud;
  cloud.resolution = n;
  for (auto& pts : cloud.links) pts.resize(static_cast<size_t>(n) * n);

  for (int a = 0; a < n; ++a) {
    // Integer numerator keeps the theta grid exactly antisymmetric.
    const double theta1 = static_cast<double>(2 * a - (n - 1)) / span * (std::numbers::pi / 2.0);
    Configuration config;
    config.q = theta1 * geom.guide_radii[0];
    for (int i = 0; i < kNumLinks; ++i) config.theta[i] = config.q / geom.guide_radii[i];
    const auto tip = forward_kinematics(config, geom);
    const auto phi = cumulative_angles(config.theta);
    for (int i = 0; i < kNumLinks; ++i) {
      const Vec2 dir(std::cos(phi[i]), std::sin(phi[i]));
      for (int b = 0; b < n; ++b) {
        const double len = geom.link_lengths[i] * (static_cast<double>(b) / span);
        cloud.links[i][static_cast<size_t>(a) * n + b] = tip.joint_positions[i] + len * dir;
      }
    }
  }
  return cloud;
}

size_t OccupancyGrid::marked(std::uint8_t mask) const {
  size_t count = 0;
  for (auto c : cells) count += (c & mask) != 0;
  return count;
}

double OccupancyGrid::overlap_area(std::uint8_t mask) const {
  size_t count = 0;
  for (auto c : cells) count += (c & mask) == mask;
  return static_cast<double>(count) * cell_size * cell_size;
}

OccupancyGrid occupancy_grid(const WorkspaceCloud& cloud, double cell_size) {
  const auto [lo, hi] = cloud.bounding_box();
  const double diagonal = (hi - lo).norm();
  if (!(cell_size > 0.0) || (diagonal > 0.0 && cell_size > diagonal)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("cell size {} m must be in (0, {}]", cell_size, diagonal));
  }
  OccupancyGrid grid;
  grid.cell_size = cell_size;
  grid.origin = lo;
  grid.width = static_cast<int>(std::floor((hi.x() - lo.x()) / cell_size)) + 1;
  grid.height = static_cast<int>(std::floor((hi.y() - lo.y()) / cell_size)) + 1;
  grid.cells.assign(static_cast<size_t>(grid.width) * grid.height, 0);
  for (int i = 0; i < kNumLinks; ++i) {
    for (const auto& p : cloud.links[i]) {
      const int ix = std::min(grid.width - 1, static_cast<int>((p.x() - lo.x()) / cell_size));
      const int iy = std::min(grid.height - 1, static_cast<int>((p.y() - lo.y()) / cell_size));
      grid.cells[static_cast<size_t>(iy) * grid.width + ix] |= link_bit(i + 1);
    }
  }
  return grid;
}

std::string workspace_csv(const WorkspaceCloud& cloud) {
  fmt::memory_buffer out;
  fmt::format_to(std::back_inserter(out), "link,x_m,y_m\n");
  for (int i = 0; i < kNumLinks; ++i) {
    for (const auto& p : cloud.links[i]) {
      // Adding 0.0 folds -0 into +0.
      fmt::format_to(std::back_inserter(out), "{},{:.9f},{:.9f}\n", i + 1, p.x() + 0.0,
                     p.y() + 0.0);
    }
  }
  return fmt::to_string(out);
}

std::string occupancy_pgm(const OccupancyGrid& grid) {
  fmt::memory_buffer out;
  fmt::format_to(std::back_inserter(out),
                 "P2\n# occupancy bitmask: 1 = link 1, 2 = link 2, 4 = link 3\n{} {}\n7\n",
                 grid.width, grid.height);
  for (int iy = grid.height - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.width; ++ix) {
      if (ix > 0) out.push_back(' ');
      fmt::format_to(std::back_inserter(out), "{}", grid.at(ix, iy));
    }
    out.push_back('\n');
  }
  return fmt::to_string(out);
}

std::string occupancy_sidecar_json(const OccupancyGrid& grid, const WorkspaceCloud& cloud) {
  nlohmann::ordered_json j;
  j["resolution"] = cloud.resolution;
  j["cell_size_m"] = grid.cell_size;
  j["origin_m"] = {grid.origin.x(), grid.origin.y()};
  j["width"] = grid.width;
  j["height"] = grid.height;
  j["encoding"] = "bitmask: 1 = link 1, 2 = link 2, 4 = link 3; rows top to bottom";
  j["points"] = {{"link1", cloud.links[0].size()},
                 {"link2", cloud.links[1].size()},
                 {"link3", cloud.links[2].size()}};
  j["area_m2"] = {{"link1", grid.area(link_bit(1))},
                  {"link2", grid.area(link_bit(2))},
                  {"link3", grid.area(link_bit(3))},
                  {"union", grid.area(kAllLinks)},
                  {"overlap_link1_link2", grid.overlap_area(link_bit(1) | link_bit(2))}};
  return j.dump(2) + "\n";
}

}  // namespace tendonsim
