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

#include "tendonsim/statics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "tendonsim/kinematics.hpp"

namespace tendonsim {
namespace {

constexpr double kPi = std::numbers::pi;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

// Wrap geometry is written for the flexion group; the extension group sees
// the mirrored pose.
Configuration mirrored(const Configuration& config, TendonGroup group) {
  Configuration out = config;
  const double s = restoring_sign(group);
  for (auto& t : out.theta) t *= s;
  return out;
}

double zero_wrap_angle(double radius_sum, double link_length, const char* name) {
  const double c = radius_sum / link_length;
  if (!(c >= 0.0 && c < 1.0)) {
    throw Error(ErrorCode::kGeometryInfeasible,
                fmt::format("{}: (R_a + R_b) / L = {:.6f} is outside [0, 1)", name, c));
  }
  return kPi - std::acos(c);
}

// Largest tension magnitude treated as round-off when checking T >= 0.
double negative_tolerance(const std::array<double, 3>& t) {
  double scale = 1.0;
  for (double v : t) scale = std::max(scale, std::abs(v));
  return 1e-12 * scale;
}

}  // namespace

const char* to_string(StaticsModel model) {
  return model == StaticsModel::kLiteral ? "literal" : "virtual-work";
}

StaticsModel statics_model_from_string(const std::string& name) {
  if (name == "literal") return StaticsModel::kLiteral;
  if (name == "virtual-work") return StaticsModel::kVirtualWork;
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("unknown statics model '{}' (literal | virtual-work)", name));
}

WrapGeometry wrap_angles(const Configuration& config, const FingerGeometry& geom) {
  const auto& r = geom.guide_radii;
  const auto& l = geom.link_lengths;
  WrapGeometry w;
  w.alpha20 = zero_wrap_angle(r[0] + r[1], l[0], "tendon 2");
  w.alpha30 = zero_wrap_angle(r[1] + r[2], l[1], "tendon 3");
  w.alpha2 = w.alpha20 - config.theta[1];
  w.alpha3 = w.alpha30 - config.theta[2];
  for (auto [alpha, name] : {std::pair{w.alpha2, "alpha2"}, std::pair{w.alpha3, "alpha3"}}) {
    if (!(alpha > 0.0 && alpha < kPi)) {
      throw Error(ErrorCode::kGeometryInfeasible,
                  fmt::format("wrap angle {} = {:.6f} rad is outside (0, pi)", name, alpha));
    }
  }
  w.rest_length2 = (w.alpha20 - 1.0 / std::tan(w.alpha20)) * (r[0] + r[1]);
  w.rest_length3 = (w.alpha30 - 1.0 / std::tan(w.alpha30)) * (r[1] + r[2]);
  if (!(w.rest_length2 > 0.0 && w.rest_length3 > 0.0)) {
    throw Error(ErrorCode::kGeometryInfeasible, "coupling tendon rest length is not positive");
  }
  return w;
}

std::array<double, 2> coupling_rest_lengths(const FingerGeometry& geom) {
  const auto w = wrap_angles(Configuration{}, geom);
  return {w.rest_length2, w.rest_length3};
}

double wrap_moment(double normal_force, double lever, double theta, double alpha) {
  return normal_force * lever * (std::cos(theta) - std::cos(alpha + theta));
}

LoadAttachment attach_load(const ExternalLoad& load, const Configuration& reference,
                           const FingerGeometry& geom) {
  LoadAttachment a;
  if (!load.application_point) {
    a.local_point = Vec2(geom.link_lengths[2], 0.0);
    return a;
  }
  const auto tip = forward_kinematics(reference, geom);
  const double phi3 = cumulative_angles(reference.theta)[2];
  a.local_point = rotate(*load.application_point - tip.joint_positions[2], -phi3);
  return a;
}

Vec2 application_point(const LoadAttachment& attachment, const Configuration& config,
                       const FingerGeometry& geom) {
  const auto tip = forward_kinematics(config, geom);
  const double phi3 = cumulative_angles(config.theta)[2];
  return tip.joint_positions[2] + rotate(attachment.local_point, phi3);
}

std::array<double, 3> external_joint_moments(const Configuration& config,
                                             const FingerGeometry& geom,
                                             const ExternalLoad& load,
                                             const LoadAttachment& attachment) {
  const auto tip = forward_kinematics(config, geom);
  const auto coms = link_coms(config, geom);
  const Vec2 p = application_point(attachment, config, geom);
  std::array<double, 3> tau{};
  for (int j = 0; j < kNumLinks; ++j) {
    const Vec2& o = tip.joint_positions[j];
    double m = load.moment + cross(p - o, load.force);
    for (int i = j; i < kNumLinks; ++i) {
      m += cross(coms[i] - o, Vec2(0.0, -geom.link_masses[i] * geom.gravity));
    }
    tau[j] = m;
  }
  return tau;
}

TendonGroup required_group(const std::array<double, 3>& tau) {
  for (int j = kNumLinks - 1; j >= 0; --j) {
    if (tau[j] < 0.0) return TendonGroup::kFlexionA;
    if (tau[j] > 0.0) return TendonGroup::kExtensionB;
  }
  return TendonGroup::kFlexionA;
}

TensionSet solve_tensions_for_group(const Configuration& config,
                                    const FingerGeometry& geom,
                                    const ExternalLoad& load,
                                    const LoadAttachment& attachment,
                                    TendonGroup group, StaticsModel model) {
  const auto tau = external_joint_moments(config, geom, load, attachment);
  const double s = restoring_sign(group);
  const auto& r = geom.guide_radii;
  const auto& l = geom.link_lengths;
  const bool literal = model == StaticsModel::kLiteral;

  std::optional<WrapGeometry> wrap;
  Configuration m = mirrored(config, group);
  if (literal) wrap = wrap_angles(m, geom);

  TensionSet out;
  out.active_group = group;
  auto& t = out.tension;
  // Step 1: link 3 about joint 3.
  t[2] = -s * tau[2] / r[2];
  // Step 2: links 2-3 about joint 2.
  const double w3 = literal ? wrap_moment(t[2], l[2], m.theta[2], wrap->alpha3) : 0.0;
  t[1] = t[2] + (-s * tau[1] + w3) / r[1];
  // Step 3: links 1-3 about joint 1; tendon 3 is internal here.
  const double w2 = literal ? wrap_moment(t[1], l[1], m.theta[1], wrap->alpha2) : 0.0;
  t[0] = t[1] + (-s * tau[0] + w2) / r[0];

  const double tol = negative_tolerance(t);
  for (int i = 0; i < kNumLinks; ++i) {
    if (t[i] < -tol) {
      throw Error(ErrorCode::kTensionInfeasible,
                  fmt::format("group {} needs T{} = {:.6g} N < 0", to_string(group),
                              i + 1, t[i]));
    }
    t[i] = std::max(t[i], 0.0);
  }
  return out;
}

TensionSet solve_tensions(const Configuration& config, const FingerGeometry& geom,
                          const ExternalLoad& load, StaticsModel model) {
  validate(geom);
  validate(load);
  const auto attachment = attach_load(load, config, geom);
  const auto first = required_group(external_joint_moments(config, geom, load, attachment));
  try {
    return solve_tensions_for_group(config, geom, load, attachment, first, model);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTensionInfeasible) throw;
  }
  try {
    return solve_tensions_for_group(config, geom, load, attachment, opposite(first), model);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTensionInfeasible) throw;
    throw Error(ErrorCode::kTensionInfeasible,
                "load cannot be held by either tendon group alone");
  }
}

std::array<double, 3> balance_residuals(const Configuration& config,
                                        const FingerGeometry& geom,
                                        const ExternalLoad& load,
                                        const LoadAttachment& attachment,
                                        const TensionSet& tensions,
                                        StaticsModel model) {
  const auto tau = external_joint_moments(config, geom, load, attachment);
  const double s = restoring_sign(tensions.active_group);
  const auto& r = geom.guide_radii;
  const auto& l = geom.link_lengths;
  const auto& t = tensions.tension;
  double w2 = 0.0, w3 = 0.0;
  if (model == StaticsModel::kLiteral) {
    const auto m = mirrored(config, tensions.active_group);
    const auto wrap = wrap_angles(m, geom);
    w3 = wrap_moment(t[2], l[2], m.theta[2], wrap.alpha3);
    w2 = wrap_moment(t[1], l[1], m.theta[1], wrap.alpha2);
  }
  return {tau[0] + s * (t[0] - t[1]) * r[0] - s * w2,
          tau[1] + s * (t[1] - t[2]) * r[1] - s * w3,
          tau[2] + s * t[2] * r[2]};
}

std::array<double, 3> elongate_tendons(const TensionSet& tensions,
                                       const std::array<TendonSpec, 3>& specs,
                                       const WrapGeometry& wrap) {
  const std::array<double, 3> rest{specs[0].rest_length, wrap.rest_length2,
                                   wrap.rest_length3};
  std::array<double, 3> out{};
  for (int i = 0; i < kNumLinks; ++i) {
    out[i] = rest[i] * (1.0 + tensions.tension[i] / specs[i].axial_stiffness());
  }
  return out;
}

Configuration update_configuration(const Configuration& nominal,
                                   const std::array<double, 3>& rest_lengths,
                                   const std::array<double, 3>& elongated,
                                   const FingerGeometry& geom,
                                   TendonGroup active_group) {
  const double s = restoring_sign(active_group);
  Configuration out = nominal;
  for (int i = 0; i < kNumLinks; ++i) {
    out.theta[i] = nominal.theta[i] - s * (elongated[i] - rest_lengths[i]) / geom.guide_radii[i];
  }
  check_theta1(out.theta[0]);
  return out;
}

Configuration update_configuration_coupled(const Configuration& nominal,
                                           const std::array<double, 3>& rest_lengths,
                                           const std::array<double, 3>& elongated,
                                           const FingerGeometry& geom,
                                           TendonGroup active_group) {
  const double s = restoring_sign(active_group);
  Configuration out = nominal;
  double slack = 0.0;
  for (int i = 0; i < kNumLinks; ++i) {
    slack += elongated[i] - rest_lengths[i];
    out.theta[i] = nominal.theta[i] - s * slack / geom.guide_radii[i];
  }
  check_theta1(out.theta[0]);
  return out;
}

void validate(const SolverOptions& options) {
  if (!(options.threshold > 0.0) || !std::isfinite(options.threshold))
    throw Error(ErrorCode::kInvalidArgument, "threshold must be > 0");
  if (options.max_iterations < 1)
    throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  if (options.divergence_window < 1)
    throw Error(ErrorCode::kInvalidArgument, "divergence_window must be >= 1");
}

FixedPointMap::FixedPointMap(double q, const Finger& finger, const ExternalLoad& load,
                             StaticsModel model)
    : finger_(finger), load_(load), model_(model) {
  validate(finger_.geometry);
  validate(finger_.tendons);
  validate(load_);
  const auto& geom = finger_.geometry;
  nominal_ = coupling_angles(q, geom);
  nominal_tip_ = forward_kinematics(nominal_, geom);
  attachment_ = attach_load(load_, nominal_, geom);
  group_ = required_group(external_joint_moments(nominal_, geom, load_, attachment_));
  const auto coupling = coupling_rest_lengths(geom);
  rest_ = {finger_.tendons.group(group_)[0].rest_length, coupling[0], coupling[1]};
}

FixedPointMap::Pass FixedPointMap::operator()(const std::array<double, 3>& elongation) const {
  const auto& geom = finger_.geometry;
  std::array<double, 3> current{};
  for (int i = 0; i < kNumLinks; ++i) current[i] = rest_[i] + elongation[i];

  Pass pass;
  pass.configuration =
      model_ == StaticsModel::kLiteral
          ? update_configuration(nominal_, rest_, current, geom, group_)
          : update_configuration_coupled(nominal_, rest_, current, geom, group_);
  pass.fingertip = forward_kinematics(pass.configuration, geom);
  pass.tensions = solve_tensions_for_group(pass.configuration, geom, load_, attachment_,
                                           group_, model_);
  const auto wrap = wrap_angles(Configuration{}, geom);
  pass.elongated_lengths = elongate_tendons(pass.tensions, finger_.tendons.group(group_), wrap);
  for (int i = 0; i < kNumLinks; ++i) {
    pass.elongation[i] = pass.elongated_lengths[i] - rest_[i];
  }
  return pass;
}

StaticSolution solve_static(double q, const Finger& finger, const ExternalLoad& load,
                            const SolverOptions& options) {
  validate(options);
  const FixedPointMap map(q, finger, load, options.model);

  StaticSolution sol;
  sol.model = options.model;
  sol.nominal = map.nominal();
  sol.nominal_fingertip = map.nominal_fingertip();
  sol.rest_lengths = map.rest_lengths();
  sol.threshold = options.threshold;

  std::array<double, 3> elongation{};
  double prev_y = 0.0;
  double prev_residual = std::numeric_limits<double>::infinity();
  int growth = 0;
  for (int k = 0; k < options.max_iterations; ++k) {
    const auto pass = map(elongation);
    const double y = pass.fingertip.position.y();
    const double residual =
        k == 0 ? std::numeric_limits<double>::quiet_NaN() : std::abs(y - prev_y);

    sol.trace.push_back({k, pass.configuration.theta, y, residual, pass.tensions.tension});
    sol.configuration = pass.configuration;
    sol.tensions = pass.tensions;
    sol.fingertip = pass.fingertip;
    sol.elongated_lengths = pass.elongated_lengths;
    sol.deflection_y = y - sol.nominal_fingertip.position.y();
    sol.iterations = k + 1;
    sol.residual = residual;

    if (k > 0) {
      if (residual <= options.threshold) {
        sol.converged = true;
        return sol;
      }
      growth = residual > prev_residual ? growth + 1 : 0;
      if (growth >= options.divergence_window) {
        auto msg = fmt::format(
            "fixed point diverging: residual grew {} passes in a row (last {:.3e} m)", growth,
            residual);
        throw NoConvergenceError(msg, std::move(sol));
      }
      prev_residual = residual;
    }
    prev_y = y;
    elongation = pass.elongation;
  }
  auto msg = fmt::format("no convergence after {} iterations (residual {:.3e} m > {:.3e} m)",
                         options.max_iterations, sol.residual, options.threshold);
  throw NoConvergenceError(msg, std::move(sol));
}

std::vector<SweepRow> stiffness_sweep(const Finger& finger, double q,
                                      std::span<const double> payloads_kg,
                                      const SolverOptions& options) {
  validate(options);
  for (size_t i = 0; i < payloads_kg.size(); ++i) {
    if (!(payloads_kg[i] >= 0.0) || !std::isfinite(payloads_kg[i]))
      throw Error(ErrorCode::kInvalidArgument, "payloads must be finite and >= 0");
    if (i > 0 && payloads_kg[i] < payloads_kg[i - 1])
      throw Error(ErrorCode::kInvalidArgument, "payloads must be sorted ascending");
  }

  std::vector<SweepRow> rows(payloads_kg.size());
  for (size_t i = 0; i < payloads_kg.size(); ++i) {
    SweepRow& row = rows[i];
    row.payload_kg = payloads_kg[i];
    row.stiffness = std::numeric_limits<double>::quiet_NaN();
    ExternalLoad load;
    load.force = Vec2(0.0, -row.payload_kg * finger.geometry.gravity);
    try {
      const auto sol = solve_static(q, finger, load, options);
      row.deflection_m = -sol.deflection_y;
      row.iterations = sol.iterations;
      if (row.deflection_m > 0.0) row.stiffness = -load.force.y() / row.deflection_m;
    } catch (const NoConvergenceError& e) {
      row.error = e.code();
      row.message = e.what();
      row.iterations = e.partial().iterations;
      row.deflection_m = -e.partial().deflection_y;
    } catch (const Error& e) {
      row.error = e.code();
      row.message = e.what();
    }
  }
  return rows;
}

}  // namespace tendonsim
