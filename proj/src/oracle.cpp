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

#include "tendonsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

#include "tendonsim/kinematics.hpp"

namespace tendonsim {
namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// d e_i / d theta_j for the flexion-group stretches.
constexpr double stretch_jacobian(const std::array<double, 3>& r, int i, int j) {
  if (i == j) return -r[i];
  if (j == i - 1) return r[j];
  return 0.0;
}

}  // namespace

std::array<double, 3> tendon_stretch(const std::array<double, 3>& theta, double q,
                                     const FingerGeometry& geom) {
  const auto& r = geom.guide_radii;
  return {q - r[0] * theta[0], r[0] * theta[0] - r[1] * theta[1],
          r[1] * theta[1] - r[2] * theta[2]};
}

std::array<std::array<double, 3>, 2> tendon_stiffness(const Finger& finger) {
  const auto coupling = coupling_rest_lengths(finger.geometry);
  std::array<std::array<double, 3>, 2> k{};
  int g = 0;
  for (auto group : {TendonGroup::kFlexionA, TendonGroup::kExtensionB}) {
    const auto& specs = finger.tendons.group(group);
    const std::array<double, 3> rest{specs[0].rest_length, coupling[0], coupling[1]};
    for (int i = 0; i < kNumLinks; ++i) k[g][i] = specs[i].axial_stiffness() / rest[i];
    ++g;
  }
  return k;
}

EnergyLandscapeSample total_potential(const std::array<double, 3>& theta, const Finger& finger,
                                      const ExternalLoad& load, double q) {
  const auto& geom = finger.geometry;
  check_theta1(theta[0]);
  const auto nominal = coupling_angles(q, geom);
  const auto attachment = attach_load(load, nominal, geom);

  Configuration config;
  config.q = q;
  config.theta = theta;

  EnergyLandscapeSample s;
  s.theta = theta;
  const auto coms = link_coms(config, geom);
  for (int i = 0; i < kNumLinks; ++i) s.gravity += geom.link_masses[i] * geom.gravity * coms[i].y();

  const auto e = tendon_stretch(theta, q, geom);
  const auto k = tendon_stiffness(finger);
  for (int i = 0; i < kNumLinks; ++i) {
    const double a = std::max(e[i], 0.0);
    const double b = std::max(-e[i], 0.0);
    s.elastic += 0.5 * k[0][i] * a * a + 0.5 * k[1][i] * b * b;
  }

  const Vec2 p = application_point(attachment, config, geom);
  s.load = -load.force.dot(p) - load.moment * (theta[0] + theta[1] + theta[2]);
  s.total = s.gravity + s.elastic + s.load;
  return s;
}

std::array<double, 3> potential_gradient(const std::array<double, 3>& theta,
                                         const Finger& finger, const ExternalLoad& load,
                                         double q) {
  const auto& geom = finger.geometry;
  check_theta1(theta[0]);
  const auto nominal = coupling_angles(q, geom);
  const auto attachment = attach_load(load, nominal, geom);
  Configuration config;
  config.q = q;
  config.theta = theta;
  const auto tip = forward_kinematics(config, geom);
  const auto coms = link_coms(config, geom);
  const Vec2 p = application_point(attachment, config, geom);
  const auto e = tendon_stretch(theta, q, geom);
  const auto k = tendon_stiffness(finger);

  std::array<double, 3> grad{};
  for (int j = 0; j < kNumLinks; ++j) {
    const Vec2& o = tip.joint_positions[j];
    double d = 0.0;
    // Rotating joint j moves every distal point r by z x (r - o_j).
    for (int i = j; i < kNumLinks; ++i) {
      d += geom.link_masses[i] * geom.gravity * (coms[i].x() - o.x());
    }
    d -= cross(p - o, load.force) + load.moment;
    for (int i = 0; i < kNumLinks; ++i) {
      const double de = stretch_jacobian(geom.guide_radii, i, j);
      d += k[0][i] * std::max(e[i], 0.0) * de - k[1][i] * std::max(-e[i], 0.0) * de;
    }
    grad[j] = d;
  }
  return grad;
}

EquilibriumResult find_equilibrium(const Finger& finger, const ExternalLoad& load, double q,
                                   int grid, int refine_rounds) {
  constexpr int kMaxRecentres = 64;
  if (grid < 11) throw Error(ErrorCode::kInvalidArgument, "oracle grid must be >= 11");
  if (refine_rounds < 0) throw Error(ErrorCode::kInvalidArgument, "refine_rounds must be >= 0");
  validate(finger.geometry);
  validate(finger.tendons);
  validate(load);

  EquilibriumResult result;
  result.nominal = coupling_angles(q, finger.geometry);
  const auto& nom = result.nominal.theta;

  std::optional<EnergyLandscapeSample> best;
  std::array<double, 3> center = nom;
  double half = kOracleHalfWidth;
  for (int round = 0; round <= refine_rounds; ++round) {
    // An incumbent on the edge of a refinement box means the minimum may lie
    // outside it (narrow valleys); slide the box before shrinking it.
    for (int pass = 0; pass < kMaxRecentres; ++pass) {
      std::array<std::vector<double>, 3> axes;
      std::array<bool, 3> clamped_lo{}, clamped_hi{};
      for (int j = 0; j < kNumLinks; ++j) {
        axes[j].resize(grid);
        clamped_lo[j] = center[j] - half <= nom[j] - kOracleHalfWidth;
        clamped_hi[j] = center[j] + half >= nom[j] + kOracleHalfWidth;
        const double lo = clamped_lo[j] ? nom[j] - kOracleHalfWidth : center[j] - half;
        const double hi = clamped_hi[j] ? nom[j] + kOracleHalfWidth : center[j] + half;
        for (int n = 0; n < grid; ++n) {
          axes[j][n] = lo + (hi - lo) * static_cast<double>(n) / (grid - 1);
        }
      }
      std::array<int, 3> at{-1, -1, -1};
      for (int a = 0; a < grid; ++a) {
        const double t0 = axes[0][a];
        if (t0 < -kTheta1Limit || t0 > kTheta1Limit) continue;
        for (int b = 0; b < grid; ++b) {
          for (int c = 0; c < grid; ++c) {
            const auto s = total_potential({t0, axes[1][b], axes[2][c]}, finger, load, q);
            if (!best || s.total < best->total) {
              best = s;
              at = {a, b, c};
            }
          }
        }
      }
      if (!best) throw Error(ErrorCode::kRangeExceeded, "search box lies outside the joint range");
      center = best->theta;
      bool on_edge = false;
      for (int j = 0; j < kNumLinks; ++j) {
        on_edge = on_edge || (at[j] == 0 && !clamped_lo[j]) ||
                  (at[j] == grid - 1 && !clamped_hi[j]);
      }
      if (!on_edge) break;
    }
    result.round_energies.push_back(best->total);
    result.final_spacing = 2.0 * half / (grid - 1);
    half /= 4.0;
  }

  for (int j = 0; j < kNumLinks; ++j) {
    if (std::abs(best->theta[j] - nom[j]) >= kOracleHalfWidth * (1.0 - 1e-12)) {
      throw Error(ErrorCode::kBoundaryMinimum,
                  fmt::format("energy minimum on the search-box boundary (theta{} = {:.6f} rad)",
                              j + 1, best->theta[j]));
    }
  }
  result.energy = *best;
  result.configuration.q = q;
  result.configuration.theta = best->theta;
  result.fingertip = forward_kinematics(result.configuration, finger.geometry);
  return result;
}

OracleComparison compare_with_oracle(const Finger& finger, const ExternalLoad& load, double q,
                                     const SolverOptions& options, int grid, int refine_rounds,
                                     double tolerance_fraction) {
  OracleComparison cmp;
  cmp.q = q;
  cmp.load = load;
  cmp.oracle = find_equilibrium(finger, load, q, grid, refine_rounds);
  cmp.tolerance_m = tolerance_fraction * finger.geometry.total_length();

  try {
    cmp.fixed_point = solve_static(q, finger, load, options);
  } catch (const Error& e) {
    cmp.fixed_point_error = fmt::format("{}: {}", to_string(e.code()), e.what());
  }
  if (cmp.fixed_point) {
    cmp.tip_delta_m = (cmp.fixed_point->fingertip.position - cmp.oracle.fingertip.position).norm();
    cmp.agree = cmp.tip_delta_m <= cmp.tolerance_m;
    try {
      cmp.fixed_point_energy =
          total_potential(cmp.fixed_point->configuration.theta, finger, load, q);
    } catch (const Error&) {
      // Fixed point left the joint range; no energy to report.
    }
  } else {
    cmp.tip_delta_m = std::numeric_limits<double>::quiet_NaN();
  }

  // Balances at the oracle pose with the tensions its stretches imply.
  const auto& geom = finger.geometry;
  const auto attachment = attach_load(load, cmp.oracle.nominal, geom);
  TensionSet tensions;
  tensions.active_group =
      required_group(external_joint_moments(cmp.oracle.nominal, geom, load, attachment));
  const auto e = tendon_stretch(cmp.oracle.configuration.theta, q, geom);
  const auto k = tendon_stiffness(finger);
  const int g = tensions.active_group == TendonGroup::kFlexionA ? 0 : 1;
  const double s = restoring_sign(tensions.active_group);
  for (int i = 0; i < kNumLinks; ++i) tensions.tension[i] = k[g][i] * std::max(s * e[i], 0.0);
  try {
    cmp.literal_residuals = balance_residuals(cmp.oracle.configuration, geom, load, attachment,
                                              tensions, StaticsModel::kLiteral);
  } catch (const Error&) {
    cmp.literal_residuals.fill(std::numeric_limits<double>::quiet_NaN());
  }
  cmp.virtual_work_residuals = balance_residuals(cmp.oracle.configuration, geom, load,
                                                 attachment, tensions, StaticsModel::kVirtualWork);
  return cmp;
}

namespace {

nlohmann::ordered_json energy_json(const EnergyLandscapeSample& s) {
  return {{"total_J", s.total}, {"gravity_J", s.gravity}, {"elastic_J", s.elastic},
          {"load_J", s.load}};
}

nlohmann::ordered_json triple_json(const std::array<double, 3>& v) { return {v[0], v[1], v[2]}; }

// NaN is not valid JSON.
nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string comparison_report_json(const OracleComparison& cmp) {
  nlohmann::ordered_json j;
  j["q_m"] = cmp.q;
  j["load"] = {{"force_N", {cmp.load.force.x(), cmp.load.force.y()}},
               {"moment_Nm", cmp.load.moment}};
  if (cmp.load.application_point) {
    j["load"]["application_point_m"] = {cmp.load.application_point->x(),
                                        cmp.load.application_point->y()};
  } else {
    j["load"]["application_point_m"] = "fingertip";
  }

  auto& o = j["oracle"];
  o["theta_rad"] = triple_json(cmp.oracle.configuration.theta);
  o["fingertip_m"] = {cmp.oracle.fingertip.position.x(), cmp.oracle.fingertip.position.y()};
  o["energy"] = energy_json(cmp.oracle.energy);
  o["final_spacing_rad"] = cmp.oracle.final_spacing;
  o["round_energies_J"] = cmp.oracle.round_energies;

  auto& f = j["fixed_point"];
  if (cmp.fixed_point) {
    const auto& sol = *cmp.fixed_point;
    f["model"] = to_string(sol.model);
    f["theta_rad"] = triple_json(sol.configuration.theta);
    f["fingertip_m"] = {sol.fingertip.position.x(), sol.fingertip.position.y()};
    f["tensions_N"] = triple_json(sol.tensions.tension);
    f["iterations"] = sol.iterations;
    f["energy"] = cmp.fixed_point_energy ? energy_json(*cmp.fixed_point_energy)
                                         : nlohmann::ordered_json(nullptr);
  } else {
    f["error"] = cmp.fixed_point_error;
  }

  j["fingertip_delta_mm"] = number_or_null(cmp.tip_delta_m * 1e3);
  j["tolerance_mm"] = cmp.tolerance_m * 1e3;
  j["agree"] = cmp.agree;
  j["balance_residuals_at_oracle_Nm"] = {
      {"literal", {number_or_null(cmp.literal_residuals[0]), number_or_null(cmp.literal_residuals[1]),
                   number_or_null(cmp.literal_residuals[2])}},
      {"virtual_work", triple_json(cmp.virtual_work_residuals)}};
  return j.dump(2) + "\n";
}

}  // namespace tendonsim
