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
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "support.hpp"
#include "tendonsim/workspace.hpp"

using namespace tendonsim;
using namespace tendonsim::testing;
using std::numbers::pi;

namespace {

const FingerGeometry kSingleLink = make_geometry({0.06, 0.0, 0.0}, {0.010, 0.0075, 0.005});
const FingerGeometry kFull = make_geometry({0.06, 0.06, 0.051}, {0.024, 0.018, 0.012});
const double kHalfDisk = pi * 0.06 * 0.06 / 2.0;

// True if every point has a mirror image within `tol` (checked through a
// cell hash, so neighbouring cells are searched too).
bool mirror_symmetric(const WorkspaceCloud& cloud, double tol) {
  std::set<std::pair<long, long>> cells;
  auto key = [&](const Vec2& p) {
    return std::pair<long, long>(std::lround(std::floor(p.x() / tol)),
                                 std::lround(std::floor(p.y() / tol)));
  };
  for (const auto& pts : cloud.links)
    for (const auto& p : pts) cells.insert(key(p));
  for (const auto& pts : cloud.links) {
    for (const auto& p : pts) {
      const auto [cx, cy] = key(Vec2(p.x(), -p.y()));
      bool found = false;
      for (long dx = -1; dx <= 1 && !found; ++dx)
        for (long dy = -1; dy <= 1 && !found; ++dy) found = cells.count({cx + dx, cy + dy}) > 0;
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("resolution below 2 is rejected") {
  try {
    sweep_workspace(kFull, 1);
    FAIL("expected ResolutionTooLow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kResolutionTooLow);
  }
  CHECK_NOTHROW(sweep_workspace(kFull, 2));
}

TEST_CASE("point counts follow resolution squared per link") {
  for (int res : {2, 7, 50}) {
    const auto c = sweep_workspace(kFull, res);
    CHECK(c.resolution == res);
    for (const auto& pts : c.links) CHECK(pts.size() == static_cast<size_t>(res * res));
    CHECK(c.size() == static_cast<size_t>(3 * res * res));
  }
}

TEST_CASE("single-link sweep fills the half disk") {
  const auto c = sweep_workspace(kSingleLink, 60);
  bool rim = false;
  for (const auto& p : c.links[0]) {
    CHECK(p.norm() <= 0.06 + 1e-12);
    CHECK(p.x() >= -1e-12);
    rim = rim || std::abs(p.norm() - 0.06) < 1e-12;
  }
  CHECK(rim);
}

TEST_CASE("every link stays inside its reach disk") {
  const auto c = sweep_workspace(kFull, 80);
  double reach = 0.0;
  for (int i = 0; i < 3; ++i) {
    reach += kFull.link_lengths[i];
    for (const auto& p : c.links[i]) CHECK(p.norm() <= reach + 1e-9);
  }
}

TEST_CASE("cloud is mirror symmetric about the x axis") {
  const auto c = sweep_workspace(kFull, 61);
  CHECK(mirror_symmetric(c, 1e-3));
  CHECK(mirror_symmetric(c, 1e-9));
}

TEST_CASE("half-disk area converges") {
  const auto c = sweep_workspace(kSingleLink, 400);
  const auto g = occupancy_grid(c, 1e-3);
  CHECK(g.area(link_bit(1)) == doctest::Approx(kHalfDisk).epsilon(0.05));
  const auto fine = occupancy_grid(c, 0.4e-3);
  CHECK(fine.area(link_bit(1)) == doctest::Approx(kHalfDisk).epsilon(0.02));
}

TEST_CASE("halving the cell size changes the area by less than perimeter times cell") {
  const auto c = sweep_workspace(kSingleLink, 400);
  const double perimeter = pi * 0.06 + 2 * 0.06;
  for (double h : {4e-3, 2e-3, 1e-3}) {
    const double coarse = occupancy_grid(c, h).area(link_bit(1));
    const double fine = occupancy_grid(c, h / 2).area(link_bit(1));
    CHECK(std::abs(coarse - fine) < perimeter * h);
  }
}

TEST_CASE("single point cloud marks one cell") {
  WorkspaceCloud c;
  c.resolution = 1;
  c.links[1].push_back(Vec2(0.01, 0.02));
  const auto g = occupancy_grid(c, 2e-3);
  CHECK(g.marked(kAllLinks) == 1);
  CHECK(g.area(kAllLinks) == doctest::Approx(4e-6));
  CHECK(g.at(0, 0) == link_bit(2));
}

TEST_CASE("empty cloud and bad cell sizes") {
  WorkspaceCloud empty;
  try {
    occupancy_grid(empty, 1e-3);
    FAIL("expected EmptyCloud");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyCloud);
  }
  const auto c = sweep_workspace(kFull, 10);
  CHECK_THROWS_AS(occupancy_grid(c, 0.0), Error);
  CHECK_THROWS_AS(occupancy_grid(c, -1.0), Error);
  CHECK_THROWS_AS(occupancy_grid(c, 10.0), Error);
}

TEST_CASE("overlap of link clouds is derived from the grid") {
  const auto c = sweep_workspace(kFull, 120);
  const auto g = occupancy_grid(c, 2e-3);
  const std::uint8_t both = link_bit(1) | link_bit(2);
  CHECK(g.overlap_area(both) > 0.0);
  CHECK(g.overlap_area(both) <= std::min(g.area(link_bit(1)), g.area(link_bit(2))));
  CHECK(g.area(kAllLinks) <= g.area(link_bit(1)) + g.area(link_bit(2)) + g.area(link_bit(3)));
}

TEST_CASE("sweeps and exports are deterministic") {
  const auto a = sweep_workspace(kFull, 50);
  const auto b = sweep_workspace(kFull, 50);
  CHECK(workspace_csv(a) == workspace_csv(b));
  const auto ga = occupancy_grid(a, 1e-3);
  const auto gb = occupancy_grid(b, 1e-3);
  CHECK(occupancy_pgm(ga) == occupancy_pgm(gb));
  CHECK(occupancy_sidecar_json(ga, a) == occupancy_sidecar_json(gb, b));
}

TEST_CASE("csv export has a header and one row per point") {
  const auto c = sweep_workspace(kFull, 5);
  const auto csv = workspace_csv(c);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "link,x_m,y_m");
  size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == c.size());
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("pgm and sidecar describe the same grid") {
  const auto c = sweep_workspace(kFull, 30);
  const auto g = occupancy_grid(c, 5e-3);
  std::istringstream in(occupancy_pgm(g));
  std::string magic, comment;
  int w = 0, h = 0, maxval = 0;
  in >> magic;
  in.ignore();
  std::getline(in, comment);
  in >> w >> h >> maxval;
  CHECK(magic == "P2");
  CHECK(w == g.width);
  CHECK(h == g.height);
  CHECK(maxval == 7);
  size_t cells = 0, marked = 0;
  int v = 0;
  while (in >> v) {
    ++cells;
    marked += v != 0;
  }
  CHECK(cells == g.cells.size());
  CHECK(marked == g.marked(kAllLinks));

  const auto j = nlohmann::json::parse(occupancy_sidecar_json(g, c));
  CHECK(j["cell_size_m"].get<double>() == g.cell_size);
  CHECK(j["width"].get<int>() == g.width);
  CHECK(j["height"].get<int>() == g.height);
}
