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

#ifndef TENDONSIM_WORKSPACE_HPP_
#define TENDONSIM_WORKSPACE_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tendonsim/types.hpp"

namespace tendonsim {

// Reachable point sets, one per link.
//
// Link i's cloud samples theta_1 uniformly over [-pi/2, pi/2] (theta_2 and
// theta_3 follow through the coupling) and the length of link i uniformly
// over [0, L_i], with proximal links at full length. Each cloud therefore has
// resolution^2 points, stored theta-major.
struct WorkspaceCloud {
  int resolution = 0;
  std::array<std::vector<Vec2>, 3> links;

  size_t size() const { return links[0].size() + links[1].size() + links[2].size(); }
  // Lower-left and upper-right corners. Throws kEmptyCloud when empty.
  std::array<Vec2, 2> bounding_box() const;
};

/// Requires resolution >= 2 (kResolutionTooLow). Link lengths may be zero
/// here so a single-link finger can be swept.
WorkspaceCloud sweep_workspace(const FingerGeometry& geom, int resolution);

struct OccupancyGrid {
  double cell_size = 0.0;
  Vec2 origin = Vec2::Zero();  // lower-left corner of cell (0, 0)
  int width = 0;
  int height = 0;
  // Row-major from the bottom row; bit i set when link i+1 has a point there.
  std::vector<std::uint8_t> cells;

  std::uint8_t at(int ix, int iy) const { return cells[static_cast<size_t>(iy) * width + ix]; }
  size_t marked(std::uint8_t mask) const;
  // Area of cells touched by any link in `mask`.
  double area(std::uint8_t mask) const { return static_cast<double>(marked(mask)) * cell_size * cell_size; }
  // Area of cells touched by every link in `mask`.
  double overlap_area(std::uint8_t mask) const;
};

inline constexpr std::uint8_t kAllLinks = 0b111;
inline constexpr std::uint8_t link_bit(int link) { return static_cast<std::uint8_t>(1u << (link - 1)); }

/// Marks every cell holding at least one point. Requires 0 < cell_size <=
/// bounding-box diagonal (any positive size for a single-point cloud).
OccupancyGrid occupancy_grid(const WorkspaceCloud& cloud, double cell_size);

// `link,x_m,y_m` with a header row.
std::string workspace_csv(const WorkspaceCloud& cloud);
// ASCII PGM (P2), top row first, pixel value = link bitmask.
std::string occupancy_pgm(const OccupancyGrid& grid);
std::string occupancy_sidecar_json(const OccupancyGrid& grid, const WorkspaceCloud& cloud);

}  // namespace tendonsim

#endif  // TENDONSIM_WORKSPACE_HPP_
