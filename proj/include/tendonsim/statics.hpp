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

// Static equilibrium of the coupled finger under external load with
// elastic tendons.
//
// Tension solve: three sequential scalar moment balances, about joint 3
// (link 3 alone), joint 2 (links 2-3) and joint 1 (links 1-3). Each tendon
// acts tangentially on the guide cylinders it wraps, so tendon i has moment
// arm R_j about every joint j it crosses:
//
//   joint 3:  tau_3 + s*T3*R3                         = 0
//   joint 2:  tau_2 + s*(T2 - T3)*R2 - s*W(T3, L3)     = 0
//   joint 1:  tau_1 + s*(T1 - T2)*R1 - s*W(T2, L2)     = 0
//
// tau_j is the moment of the tip load and the distal link weights about
// joint j, s is +1 for the flexion group and -1 for the extension group, and
// W is the capstan wrap moment N*L*(cos th - cos(alpha + th)) with N = T.
// The wrap terms are present only in the kLiteral closure.
//
// The fixed-point loop alternates kinematics, tension solve and Hooke's-law
// elongation until the fingertip height moves by no more than `threshold`
// between two passes.

#ifndef TENDONSIM_STATICS_HPP_
#define TENDONSIM_STATICS_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tendonsim/types.hpp"

namespace tendonsim {

// How the tension balances and the configuration update are closed.
enum class StaticsModel {
  // Wrap moments with the link length as lever; each joint rotates by the
  // elongation of its own tendon only.
  kLiteral,
  // No wrap moments; elongations propagate through the coupling tendons.
  // This is exactly the stationarity condition of the tendon potential
  // energy used by the oracle.
  kVirtualWork,
};

const char* to_string(StaticsModel model);
StaticsModel statics_model_from_string(const std::string& name);

struct TensionSet {
  std::array<double, 3> tension{};  // T1, T2, T3 of the active group [N]
  TendonGroup active_group = TendonGroup::kFlexionA;
};

struct WrapGeometry {
  double alpha2 = 0.0;   // loaded wrap angle of tendon 2 [rad]
  double alpha3 = 0.0;   // loaded wrap angle of tendon 3 [rad]
  double alpha20 = 0.0;  // wrap angles at theta = 0
  double alpha30 = 0.0;
  double rest_length2 = 0.0;  // [m]
  double rest_length3 = 0.0;
};

/// Wrap angles and coupling-tendon rest lengths at `config`. Throws
/// kGeometryInfeasible if an arccos argument leaves [0, 1) or a loaded wrap
/// angle leaves (0, pi).
WrapGeometry wrap_angles(const Configuration& config, const FingerGeometry& geom);

/// Rest lengths of coupling tendons 2 and 3 from the zero-deflection wrap.
std::array<double, 2> coupling_rest_lengths(const FingerGeometry& geom);

/// Moment of a distributed normal load N over the arc [theta, theta + alpha]
/// with lever `lever`: N * lever * (cos(theta) - cos(alpha + theta)).
double wrap_moment(double normal_force, double lever, double theta, double alpha);

// The material point where the external force acts, in link-3 coordinates
// (origin at joint 3, x along link 3).
struct LoadAttachment {
  Vec2 local_point = Vec2::Zero();
};

LoadAttachment attach_load(const ExternalLoad& load, const Configuration& reference,
                           const FingerGeometry& geom);

Vec2 application_point(const LoadAttachment& attachment,
                       const Configuration& config, const FingerGeometry& geom);

/// tau_j: moment about joint j of the external load, the external moment and
/// the weights of links j..3.
std::array<double, 3> external_joint_moments(const Configuration& config,
                                             const FingerGeometry& geom,
                                             const ExternalLoad& load,
                                             const LoadAttachment& attachment);

/// Group whose tendons must stretch to hold the moments: decided by the first
/// non-zero of tau_3, tau_2, tau_1. Zero load selects the flexion group.
TendonGroup required_group(const std::array<double, 3>& tau);

/// Tensions of `group` at `config`. Throws kTensionInfeasible if any T_i < 0.
TensionSet solve_tensions_for_group(const Configuration& config,
                                    const FingerGeometry& geom,
                                    const ExternalLoad& load,
                                    const LoadAttachment& attachment,
                                    TendonGroup group, StaticsModel model);

/// Tries the group required by the load sign first, then the other one.
/// The load point is attached at `config`. Throws kTensionInfeasible if
/// neither group yields non-negative tensions.
TensionSet solve_tensions(const Configuration& config, const FingerGeometry& geom,
                          const ExternalLoad& load,
                          StaticsModel model = StaticsModel::kLiteral);

/// Left-hand sides of the three balances (joint 1, 2, 3 order) for the given
/// tensions; all zero at a solved state.
std::array<double, 3> balance_residuals(const Configuration& config,
                                        const FingerGeometry& geom,
                                        const ExternalLoad& load,
                                        const LoadAttachment& attachment,
                                        const TensionSet& tensions,
                                        StaticsModel model);

/// Hooke's law: L' = L * (1 + T / (E A)). Tendon 1 uses its configured rest
/// length, tendons 2-3 the wrap-derived ones.
std::array<double, 3> elongate_tendons(const TensionSet& tensions,
                                       const std::array<TendonSpec, 3>& specs,
                                       const WrapGeometry& wrap);

/// theta_i' = theta_i -/+ (L_i' - L_i) / R_i: each joint yields against the
/// restoring sense of `active_group`. Throws kRangeExceeded for theta_1.
Configuration update_configuration(const Configuration& nominal,
                                   const std::array<double, 3>& rest_lengths,
                                   const std::array<double, 3>& elongated,
                                   const FingerGeometry& geom,
                                   TendonGroup active_group);

/// As update_configuration, but an elongation of tendon i also turns every
/// joint distal to i through the coupling: theta_j' = (q -/+ sum_{i<=j} dL_i)/R_j.
Configuration update_configuration_coupled(const Configuration& nominal,
                                           const std::array<double, 3>& rest_lengths,
                                           const std::array<double, 3>& elongated,
                                           const FingerGeometry& geom,
                                           TendonGroup active_group);

struct SolverOptions {
  double threshold = 1e-6;  // [m]
  int max_iterations = 100;
  StaticsModel model = StaticsModel::kLiteral;
  // Stop early once the residual has grown this many passes in a row.
  int divergence_window = 5;
};

void validate(const SolverOptions& options);

struct IterationRecord {
  int k = 0;
  std::array<double, 3> theta{};
  double y = 0.0;
  double residual = 0.0;  // NaN on the first pass
  std::array<double, 3> tension{};
};

struct StaticSolution {
  StaticsModel model = StaticsModel::kLiteral;
  Configuration nominal;
  Configuration configuration;
  TensionSet tensions;
  FingertipState nominal_fingertip;
  FingertipState fingertip;
  double deflection_y = 0.0;  // fingertip y minus nominal fingertip y [m]
  int iterations = 0;
  double residual = 0.0;
  double threshold = 0.0;
  bool converged = false;
  std::array<double, 3> rest_lengths{};
  std::array<double, 3> elongated_lengths{};
  std::vector<IterationRecord> trace;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, StaticSolution partial)
      : Error(ErrorCode::kNoConvergence, what), partial_(std::move(partial)) {}
  const StaticSolution& partial() const { return partial_; }

 private:
  StaticSolution partial_;
};

// One pass of the fixed-point map: given the current tendon elongations,
// rebuild the configuration, solve tensions there and elongate.
class FixedPointMap {
 public:
  FixedPointMap(double q, const Finger& finger, const ExternalLoad& load,
                StaticsModel model);

  struct Pass {
    Configuration configuration;
    FingertipState fingertip;
    TensionSet tensions;
    std::array<double, 3> elongated_lengths{};
    std::array<double, 3> elongation{};  // L' - L
  };

  Pass operator()(const std::array<double, 3>& elongation) const;

  const Configuration& nominal() const { return nominal_; }
  const FingertipState& nominal_fingertip() const { return nominal_tip_; }
  TendonGroup active_group() const { return group_; }
  const std::array<double, 3>& rest_lengths() const { return rest_; }

 private:
  Finger finger_;
  ExternalLoad load_;
  StaticsModel model_;
  Configuration nominal_;
  FingertipState nominal_tip_;
  LoadAttachment attachment_;
  TendonGroup group_;
  std::array<double, 3> rest_{};
};

/// Iterative static solve at actuator displacement q. Throws
/// NoConvergenceError (carrying the partial trace) after max_iterations or on
/// sustained divergence; propagates kTensionInfeasible, kRangeExceeded and
/// kGeometryInfeasible.
StaticSolution solve_static(double q, const Finger& finger, const ExternalLoad& load,
                            const SolverOptions& options = {});

struct SweepRow {
  double payload_kg = 0.0;
  double deflection_m = 0.0;  // downward sag of the fingertip
  double stiffness = 0.0;     // m g / deflection [N/m]; NaN if undefined
  int iterations = 0;
  std::optional<ErrorCode> error;
  std::string message;

  bool ok() const { return !error.has_value(); }
};

/// Tip payload sweep with F_E = (0, -m g), M_E = 0. Row failures are recorded
/// and the sweep continues. Payloads must be ascending and >= 0.
std::vector<SweepRow> stiffness_sweep(const Finger& finger, double q,
                                      std::span<const double> payloads_kg,
                                      const SolverOptions& options = {});

}  // namespace tendonsim

#endif  // TENDONSIM_STATICS_HPP_
