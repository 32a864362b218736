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
#include <random>

#include "support.hpp"
#include "tendonsim/kinematics.hpp"

using namespace tendonsim;
using namespace tendonsim::testing;
using std::numbers::pi;

namespace {

const FingerGeometry kSpecGeom =
    make_geometry({0.06, 0.06, 0.051}, {0.010, 0.0075, 0.005});

Vec2 central_difference(double q, const FingerGeometry& g, double h = 1e-7) {
  const Vec2 hi = fingertip_from_displacement(q + h, g).position;
  const Vec2 lo = fingertip_from_displacement(q - h, g).position;
  return (hi - lo) / (2.0 * h);
}

}  // namespace

TEST_CASE("coupling angles divide q by each guide radius") {
  const auto zero = coupling_angles(0.0, kSpecGeom);
  CHECK(zero.theta == std::array<double, 3>{0.0, 0.0, 0.0});

  const auto c = coupling_angles(0.00785, kSpecGeom);
  CHECK(c.q == 0.00785);
  CHECK(c.theta[0] == doctest::Approx(0.785).epsilon(1e-12));
  CHECK(c.theta[1] == doctest::Approx(1.0466667).epsilon(1e-7));
  CHECK(c.theta[2] == doctest::Approx(1.570).epsilon(1e-12));
}

TEST_CASE("theta1 outside [-pi/2, pi/2] is an error, not a clamp") {
  try {
    coupling_angles(0.020, kSpecGeom);
    FAIL("expected RangeExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kRangeExceeded);
  }
  CHECK_THROWS_AS(coupling_angles(-0.020, kSpecGeom), Error);
  CHECK_NOTHROW(coupling_angles(pi / 2 * 0.010, kSpecGeom));
  CHECK_THROWS_AS(fingertip_from_displacement(0.020, kSpecGeom), Error);
  CHECK_THROWS_AS(jacobian(0.020, kSpecGeom), Error);
}

TEST_CASE("coupling is linear in q") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> qd(-0.0075, 0.0075), ad(-2.0, 2.0);
  for (int n = 0; n < 200; ++n) {
    const double q = qd(rng), a = ad(rng);
    const auto base = coupling_angles(q, kSpecGeom);
    const auto scaled = coupling_angles(a * q, kSpecGeom);
    for (int i = 0; i < 3; ++i)
      CHECK(scaled.theta[i] == doctest::Approx(a * base.theta[i]).epsilon(1e-12));
  }
}

TEST_CASE("forward kinematics of the straight and rotated poses is exact") {
  Configuration c;
  const auto straight = forward_kinematics(c, kSpecGeom);
  CHECK(std::abs(straight.position.x() - 0.171) < 1e-12);
  CHECK(straight.position.y() == 0.0);

  c.theta = {pi / 2, 0.0, 0.0};
  const auto up = forward_kinematics(c, kSpecGeom);
  CHECK(std::abs(up.position.x()) < 1e-12);
  CHECK(std::abs(up.position.y() - 0.171) < 1e-12);
}

TEST_CASE("cumulative-angle forward kinematics matches the hand-evaluated sums") {
  const auto g = make_geometry({0.1, 0.1, 0.1}, {0.01, 0.01, 0.01});
  Configuration c;
  c.theta = {pi / 6, pi / 6, pi / 6};
  const auto s = forward_kinematics(c, g);
  CHECK(s.position.x() == doctest::Approx(0.13660254).epsilon(1e-8));
  CHECK(s.position.y() == doctest::Approx(0.23660254).epsilon(1e-8));

  // Joint positions are the partial sums.
  CHECK(s.joint_positions[0].norm() == 0.0);
  CHECK(s.joint_positions[1].x() == doctest::Approx(0.1 * std::cos(pi / 6)));
  CHECK(s.joint_positions[2].x() == doctest::Approx(0.1 * (std::cos(pi / 6) + std::cos(pi / 3))));
  CHECK((s.joint_positions[3] - s.position).norm() == 0.0);

  // Equal radii: q = R pi/6 reproduces the same pose.
  const auto viaq = fingertip_from_displacement(0.01 * pi / 6, g);
  CHECK(viaq.position.x() == doctest::Approx(0.13660254).epsilon(1e-8));
  CHECK(viaq.position.y() == doctest::Approx(0.23660254).epsilon(1e-8));
}

TEST_CASE("fingertip_from_displacement is the two-step pipeline bit for bit") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> qd(-0.0155, 0.0155);
  for (int n = 0; n < 100; ++n) {
    const double q = qd(rng);
    const auto a = fingertip_from_displacement(q, kSpecGeom);
    const auto b = forward_kinematics(coupling_angles(q, kSpecGeom), kSpecGeom);
    CHECK(a.position.x() == b.position.x());
    CHECK(a.position.y() == b.position.y());
  }
}

TEST_CASE("reach bound and frame convention") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> qd(-0.0157, 0.0157);
  for (int n = 0; n < 500; ++n) {
    const auto s = fingertip_from_displacement(qd(rng), kSpecGeom);
    CHECK(s.position.norm() <= kSpecGeom.total_length() + 1e-9);
  }
  const auto zero = fingertip_from_displacement(0.0, kSpecGeom);
  CHECK(zero.position.y() == 0.0);
  CHECK(zero.position.x() > 0.0);
}

TEST_CASE("jacobian at q = 0 points along +y") {
  const Vec2 j = jacobian(0.0, kSpecGeom);
  CHECK(j.x() == 0.0);
  // Link i turns at rate sum_{k<=i} 1/R_k.
  const auto& L = kSpecGeom.link_lengths;
  const auto& R = kSpecGeom.guide_radii;
  const double expect = L[0] / R[0] + L[1] * (1 / R[0] + 1 / R[1]) +
                        L[2] * (1 / R[0] + 1 / R[1] + 1 / R[2]);
  CHECK(j.y() == doctest::Approx(expect).epsilon(1e-12));
  CHECK((central_difference(0.0, kSpecGeom) - j).norm() / j.norm() < 1e-5);
}

TEST_CASE("jacobian of a degenerate finger vanishes") {
  const auto g = make_geometry({0.0, 0.0, 0.0}, {0.01, 0.0075, 0.005});
  const Vec2 j = jacobian(0.004, g);
  CHECK(j.x() == 0.0);
  CHECK(j.y() == 0.0);
}

TEST_CASE("jacobian agrees with central finite differences") {
  const Vec2 j4 = jacobian(0.004, kSpecGeom);
  CHECK((central_difference(0.004, kSpecGeom) - j4).norm() / j4.norm() < 1e-5);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> qd(-0.0155, 0.0155);
  for (int n = 0; n < 100; ++n) {
    const double q = qd(rng);
    const Vec2 j = jacobian(q, kSpecGeom);
    CHECK((central_difference(q, kSpecGeom) - j).norm() / j.norm() < 1e-5);
  }
}

TEST_CASE("link centres of mass sit at the configured fractions") {
  auto g = kSpecGeom;
  g.com_fractions = {0.5, 0.25, 1.0};
  const auto c = coupling_angles(0.004, g);
  const auto tip = forward_kinematics(c, g);
  const auto coms = link_coms(c, g);
  CHECK((coms[0] - 0.5 * (tip.joint_positions[0] + tip.joint_positions[1])).norm() < 1e-15);
  CHECK((coms[1] - (0.75 * tip.joint_positions[1] + 0.25 * tip.joint_positions[2])).norm() <
        1e-15);
  CHECK((coms[2] - tip.position).norm() < 1e-15);
}
