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

// Brute-force equilibrium by total potential energy minimization over the
// three joint angles. Independent of the force-balance solver: it never
// forms a tension balance, only an energy, and searches it on nested grids.
//
// Tendon stretch follows the crossed routing: with group A stretches
//   e1 = q - R1*th1,  e2 = R1*th1 - R2*th2,  e3 = R2*th2 - R3*th3
// and group B stretches -e. Slack tendons (negative stretch) store nothing.

#ifndef TENDONSIM_ORACLE_HPP_
#define TENDONSIM_ORACLE_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tendonsim/statics.hpp"
#include "tendonsim/types.hpp"

namespace tendonsim {

struct EnergyLandscapeSample {
  std::array<double, 3> theta{};
  double total = 0.0;    // [J]
  double gravity = 0.0;  // sum m_i g y_com_i
  double elastic = 0.0;  // tendon strain energy
  double load = 0.0;     // -F . p_E - M (th1 + th2 + th3)
};

// Tendon stretches of the flexion group at `theta` for displacement q.
std::array<double, 3> tendon_stretch(const std::array<double, 3>& theta, double q,
                                     const FingerGeometry& geom);

// E_i A_i / L_Ti for both groups (flexion first).
std::array<std::array<double, 3>, 2> tendon_stiffness(const Finger& finger);

/// Throws kRangeExceeded if theta_1 is outside [-pi/2, pi/2]. The load point
/// is attached at the nominal pose for q.
EnergyLandscapeSample total_potential(const std::array<double, 3>& theta, const Finger& finger,
                                      const ExternalLoad& load, double q);

std::array<double, 3> potential_gradient(const std::array<double, 3>& theta,
                                         const Finger& finger, const ExternalLoad& load,
                                         double q);

struct EquilibriumResult {
  Configuration nominal;
  Configuration configuration;
  FingertipState fingertip;
  EnergyLandscapeSample energy;
  std::vector<double> round_energies;  // incumbent after each round
  double final_spacing = 0.0;          // grid step of the last round [rad]
};

inline constexpr double kOracleHalfWidth = 0.5;  // search box half-width [rad]

/// Grid search over nominal +/- 0.5 rad per axis, then refine_rounds of
/// shrink-by-4 grids around the incumbent. Ties go to the lowest
/// lexicographic grid index. Throws kBoundaryMinimum if the result touches
/// the outer box.
EquilibriumResult find_equilibrium(const Finger& finger, const ExternalLoad& load, double q,
                                   int grid = 11, int refine_rounds = 16);

struct OracleComparison {
  double q = 0.0;
  ExternalLoad load;
  std::optional<StaticSolution> fixed_point;
  std::string fixed_point_error;
  EquilibriumResult oracle;
  std::optional<EnergyLandscapeSample> fixed_point_energy;
  double tip_delta_m = 0.0;
  double tolerance_m = 0.0;
  bool agree = false;
  // Joint 1, 2, 3 balance left-hand sides at the oracle pose with the
  // oracle's tendon tensions, under each closure.
  std::array<double, 3> literal_residuals{};
  std::array<double, 3> virtual_work_residuals{};
};

OracleComparison compare_with_oracle(const Finger& finger, const ExternalLoad& load, double q,
                                     const SolverOptions& options, int grid = 11,
                                     int refine_rounds = 16, double tolerance_fraction = 0.01);

std::string comparison_report_json(const OracleComparison& cmp);

}  // namespace tendonsim

#endif  // TENDONSIM_ORACLE_HPP_
