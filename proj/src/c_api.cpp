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

#include "tendonsim/tendonsim.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tendonsim/config.hpp"
#include "tendonsim/kinematics.hpp"
#include "tendonsim/oracle.hpp"
#include "tendonsim/report.hpp"
#include "tendonsim/statics.hpp"
#include "tendonsim/workspace.hpp"

struct tsim_finger {
  tendonsim::FingerConfig config;
};

struct tsim_solution {
  tendonsim::StaticSolution solution;
};

struct tsim_sweep {
  std::vector<tendonsim::SweepRow> rows;
  double total_length = 0.0;
  std::optional<tendonsim::ReferenceComparison> reference;
};

struct tsim_workspace {
  tendonsim::WorkspaceCloud cloud;
};

namespace {

using namespace tendonsim;

thread_local std::string g_last_error;

tsim_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return TSIM_ERR_INVALID_ARGUMENT;
    case ErrorCode::kConfig: return TSIM_ERR_CONFIG;
    case ErrorCode::kIo: return TSIM_ERR_IO;
    case ErrorCode::kRangeExceeded: return TSIM_ERR_RANGE_EXCEEDED;
    case ErrorCode::kGeometryInfeasible: return TSIM_ERR_GEOMETRY_INFEASIBLE;
    case ErrorCode::kTensionInfeasible: return TSIM_ERR_TENSION_INFEASIBLE;
    case ErrorCode::kNoConvergence: return TSIM_ERR_NO_CONVERGENCE;
    case ErrorCode::kResolutionTooLow: return TSIM_ERR_RESOLUTION_TOO_LOW;
    case ErrorCode::kEmptyCloud: return TSIM_ERR_EMPTY_CLOUD;
    case ErrorCode::kBoundaryMinimum: return TSIM_ERR_BOUNDARY_MINIMUM;
  }
  return TSIM_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
tsim_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return TSIM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TSIM_ERR_INTERNAL;
  }
}

tsim_status null_argument(const char* name) {
  g_last_error = std::string(name) + " must not be NULL";
  return TSIM_ERR_INVALID_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SolverOptions to_options(const tsim_solver_options* options) {
  SolverOptions o;
  if (!options) return o;
  o.threshold = options->threshold;
  o.max_iterations = options->max_iterations;
  o.model = options->model == TSIM_MODEL_VIRTUAL_WORK ? StaticsModel::kVirtualWork
                                                      : StaticsModel::kLiteral;
  return o;
}

ExternalLoad to_load(const tsim_load* load) {
  ExternalLoad l;
  if (!load) return l;
  l.force = Vec2(load->force[0], load->force[1]);
  l.moment = load->moment;
  if (load->has_point) l.application_point = Vec2(load->point[0], load->point[1]);
  return l;
}

void copy3(const std::array<double, 3>& from, double to[3]) {
  for (int i = 0; i < 3; ++i) to[i] = from[i];
}

}  // namespace

extern "C" {

const char* tsim_status_name(tsim_status status) {
  switch (status) {
    case TSIM_OK: return "ok";
    case TSIM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case TSIM_ERR_CONFIG: return "config_error";
    case TSIM_ERR_IO: return "io_error";
    case TSIM_ERR_RANGE_EXCEEDED: return "range_exceeded";
    case TSIM_ERR_GEOMETRY_INFEASIBLE: return "geometry_infeasible";
    case TSIM_ERR_TENSION_INFEASIBLE: return "tension_infeasible";
    case TSIM_ERR_NO_CONVERGENCE: return "no_convergence";
    case TSIM_ERR_RESOLUTION_TOO_LOW: return "resolution_too_low";
    case TSIM_ERR_EMPTY_CLOUD: return "empty_cloud";
    case TSIM_ERR_BOUNDARY_MINIMUM: return "boundary_minimum";
    case TSIM_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* tsim_last_error(void) { return g_last_error.c_str(); }

void tsim_string_free(char* s) { std::free(s); }

void tsim_solver_options_init(tsim_solver_options* options) {
  if (!options) return;
  const SolverOptions d;
  options->threshold = d.threshold;
  options->max_iterations = d.max_iterations;
  options->model = TSIM_MODEL_LITERAL;
}

tsim_status tsim_finger_load(const char* path, tsim_finger** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new tsim_finger{load_config_file(path)}; });
}

tsim_status tsim_finger_parse(const char* json_text, const char* base_dir, tsim_finger** out) {
  if (!json_text) return null_argument("json_text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new tsim_finger{parse_config(json_text, base_dir ? base_dir : "")};
  });
}

void tsim_finger_free(tsim_finger* finger) { delete finger; }

tsim_status tsim_finger_solver_options(const tsim_finger* finger, tsim_solver_options* out) {
  if (!finger) return null_argument("finger");
  if (!out) return null_argument("out");
  const auto& s = finger->config.solver;
  out->threshold = s.threshold;
  out->max_iterations = s.max_iterations;
  out->model = s.model == StaticsModel::kVirtualWork ? TSIM_MODEL_VIRTUAL_WORK : TSIM_MODEL_LITERAL;
  return TSIM_OK;
}

tsim_status tsim_finger_total_length(const tsim_finger* finger, double* out) {
  if (!finger) return null_argument("finger");
  if (!out) return null_argument("out");
  *out = finger->config.finger.geometry.total_length();
  return TSIM_OK;
}

tsim_status tsim_finger_guide_radii(const tsim_finger* finger, double out[3]) {
  if (!finger) return null_argument("finger");
  if (!out) return null_argument("out");
  copy3(finger->config.finger.geometry.guide_radii, out);
  return TSIM_OK;
}

tsim_status tsim_finger_set_youngs_modulus(tsim_finger* finger, double pascals) {
  if (!finger) return null_argument("finger");
  return guarded([&] {
    if (!(pascals > 0.0) || !std::isfinite(pascals))
      throw Error(ErrorCode::kInvalidArgument, "Young's modulus must be > 0");
    auto& t = finger->config.finger.tendons;
    for (auto& s : t.flexion) s.youngs_modulus = pascals;
    for (auto& s : t.extension) s.youngs_modulus = pascals;
  });
}

tsim_status tsim_kinematics_at(const tsim_finger* finger, double q, tsim_kinematics* out) {
  if (!finger) return null_argument("finger");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto& geom = finger->config.finger.geometry;
    const auto config = coupling_angles(q, geom);
    const auto tip = forward_kinematics(config, geom);
    const auto j = jacobian(q, geom);
    out->q = q;
    copy3(config.theta, out->theta);
    for (int i = 0; i < 4; ++i) {
      out->joints[i][0] = tip.joint_positions[i].x();
      out->joints[i][1] = tip.joint_positions[i].y();
    }
    out->tip[0] = tip.position.x();
    out->tip[1] = tip.position.y();
    out->jacobian[0] = j.x();
    out->jacobian[1] = j.y();
  });
}

tsim_status tsim_solve_static(const tsim_finger* finger, double q, const tsim_load* load,
                              const tsim_solver_options* options, tsim_solution** out) {
  if (!finger) return null_argument("finger");
  if (!out) return null_argument("out");
  *out = nullptr;
  g_last_error.clear();
  try {
    *out = new tsim_solution{
        solve_static(q, finger->config.finger, to_load(load), to_options(options))};
    return TSIM_OK;
  } catch (const NoConvergenceError& e) {
    g_last_error = e.what();
    *out = new tsim_solution{e.partial()};
    return TSIM_ERR_NO_CONVERGENCE;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TSIM_ERR_INTERNAL;
  }
}

tsim_status tsim_solution_info_get(const tsim_solution* solution, tsim_solution_info* out) {
  if (!solution) return null_argument("solution");
  if (!out) return null_argument("out");
  const auto& s = solution->solution;
  out->converged = s.converged ? 1 : 0;
  out->iterations = s.iterations;
  out->residual = s.residual;
  copy3(s.configuration.theta, out->theta);
  copy3(s.nominal.theta, out->nominal_theta);
  copy3(s.tensions.tension, out->tensions);
  out->active_group = s.tensions.active_group == TendonGroup::kFlexionA ? TSIM_GROUP_FLEXION
                                                                        : TSIM_GROUP_EXTENSION;
  out->tip[0] = s.fingertip.position.x();
  out->tip[1] = s.fingertip.position.y();
  out->deflection_y = s.deflection_y;
  copy3(s.elongated_lengths, out->elongated_lengths);
  return TSIM_OK;
}

tsim_status tsim_solution_json(const tsim_solution* solution, char** out) {
  if (!solution) return null_argument("solution");
  if (!out) return null_argument("out");
  return guarded([&] { *out = dup(solution_json(solution->solution)); });
}

void tsim_solution_free(tsim_solution* solution) { delete solution; }

tsim_status tsim_stiffness_sweep(const tsim_finger* finger, double q, const double* payloads_kg,
                                 size_t count, const tsim_solver_options* options,
                                 tsim_sweep** out) {
  if (!finger) return null_argument("finger");
  if (!out) return null_argument("out");
  if (count > 0 && !payloads_kg) return null_argument("payloads_kg");
  *out = nullptr;
  return guarded([&] {
    if (count == 0) throw Error(ErrorCode::kInvalidArgument, "payload list is empty");
    auto sweep = std::make_unique<tsim_sweep>();
    sweep->rows = stiffness_sweep(finger->config.finger, q,
                                  std::span<const double>(payloads_kg, count), to_options(options));
    sweep->total_length = finger->config.finger.geometry.total_length();
    *out = sweep.release();
  });
}

size_t tsim_sweep_size(const tsim_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

tsim_status tsim_sweep_row_get(const tsim_sweep* sweep, size_t index, tsim_sweep_row* out) {
  if (!sweep) return null_argument("sweep");
  if (!out) return null_argument("out");
  if (index >= sweep->rows.size()) {
    g_last_error = "row index out of range";
    return TSIM_ERR_INVALID_ARGUMENT;
  }
  const auto& r = sweep->rows[index];
  out->payload_kg = r.payload_kg;
  out->deflection_m = r.deflection_m;
  out->stiffness = r.stiffness;
  out->iterations = r.iterations;
  out->status = r.error ? status_of(*r.error) : TSIM_OK;
  return TSIM_OK;
}

tsim_status tsim_sweep_csv(const tsim_sweep* sweep, char** out) {
  if (!sweep) return null_argument("sweep");
  if (!out) return null_argument("out");
  return guarded([&] { *out = dup(sweep_csv(sweep->rows)); });
}

tsim_status tsim_sweep_load_reference(tsim_sweep* sweep, const char* csv_path,
                                      tsim_reference_summary* summary) {
  if (!sweep) return null_argument("sweep");
  if (!csv_path) return null_argument("csv_path");
  return guarded([&] {
    sweep->reference =
        compare_to_reference(sweep->rows, read_reference_csv(csv_path), sweep->total_length);
    if (summary) {
      summary->matched = sweep->reference->matched;
      summary->max_error_mm = sweep->reference->max_error_mm;
      summary->mean_error_mm = sweep->reference->mean_error_mm;
      summary->max_error_pct = sweep->reference->max_error_pct;
      summary->mean_error_pct = sweep->reference->mean_error_pct;
    }
  });
}

tsim_status tsim_validation_csv(const tsim_sweep* sweep, char** out) {
  if (!sweep) return null_argument("sweep");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = dup(validation_csv(sweep->rows, sweep->reference ? &*sweep->reference : nullptr));
  });
}

tsim_status tsim_validation_summary(const tsim_sweep* sweep, char** out) {
  if (!sweep) return null_argument("sweep");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = dup(validation_summary(sweep->rows, sweep->reference ? &*sweep->reference : nullptr,
                                  sweep->total_length));
  });
}

void tsim_sweep_free(tsim_sweep* sweep) { delete sweep; }

tsim_status tsim_workspace_sweep(const tsim_finger* finger, int resolution, tsim_workspace** out) {
  if (!finger) return null_argument("finger");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new tsim_workspace{sweep_workspace(finger->config.finger.geometry, resolution)};
  });
}

size_t tsim_workspace_point_count(const tsim_workspace* ws, int link) {
  if (!ws || link < 1 || link > 3) return 0;
  return ws->cloud.links[link - 1].size();
}

tsim_status tsim_workspace_csv(const tsim_workspace* ws, char** out) {
  if (!ws) return null_argument("ws");
  if (!out) return null_argument("out");
  return guarded([&] { *out = dup(workspace_csv(ws->cloud)); });
}

tsim_status tsim_workspace_occupancy(const tsim_workspace* ws, double cell_size,
                                     tsim_occupancy_info* info, char** pgm_out,
                                     char** sidecar_out) {
  if (!ws) return null_argument("ws");
  return guarded([&] {
    const auto grid = occupancy_grid(ws->cloud, cell_size);
    if (info) {
      info->cell_size = grid.cell_size;
      info->origin[0] = grid.origin.x();
      info->origin[1] = grid.origin.y();
      info->width = grid.width;
      info->height = grid.height;
      for (int i = 0; i < 3; ++i) info->link_area[i] = grid.area(link_bit(i + 1));
      info->union_area = grid.area(kAllLinks);
      info->overlap_link1_link2 = grid.overlap_area(link_bit(1) | link_bit(2));
    }
    std::string pgm, sidecar;
    if (pgm_out) pgm = occupancy_pgm(grid);
    if (sidecar_out) sidecar = occupancy_sidecar_json(grid, ws->cloud);
    if (pgm_out) *pgm_out = dup(pgm);
    if (sidecar_out) *sidecar_out = dup(sidecar);
  });
}

void tsim_workspace_free(tsim_workspace* ws) { delete ws; }

tsim_status tsim_oracle_check(const tsim_finger* finger, double q, const tsim_load* load,
                              const tsim_solver_options* options, int grid, int refine_rounds,
                              double tolerance_fraction, char** report_json, int* agree) {
  if (!finger) return null_argument("finger");
  return guarded([&] {
    if (!(tolerance_fraction > 0.0))
      throw Error(ErrorCode::kInvalidArgument, "tolerance_fraction must be > 0");
    const auto cmp = compare_with_oracle(finger->config.finger, to_load(load), q,
                                         to_options(options), grid, refine_rounds,
                                         tolerance_fraction);
    if (agree) *agree = cmp.agree ? 1 : 0;
    if (report_json) *report_json = dup(comparison_report_json(cmp));
  });
}

}  // extern "C"
