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

// Command-line front end. Talks to the simulator only through the C API.
//
// Exit codes: 0 success, 1 usage/config/IO error, 2 infeasible (range,
// geometry, tension), 3 no convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tendonsim/tendonsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNoConvergence = 3;

int exit_code(tsim_status status) {
  switch (status) {
    case TSIM_OK: return kExitOk;
    case TSIM_ERR_RANGE_EXCEEDED:
    case TSIM_ERR_GEOMETRY_INFEASIBLE:
    case TSIM_ERR_TENSION_INFEASIBLE:
    case TSIM_ERR_BOUNDARY_MINIMUM:
      return kExitInfeasible;
    case TSIM_ERR_NO_CONVERGENCE: return kExitNoConvergence;
    default: return kExitUsage;
  }
}

int report(tsim_status status) {
  std::cerr << "error (" << tsim_status_name(status) << "): " << tsim_last_error() << "\n";
  return exit_code(status);
}

struct StringDeleter {
  void operator()(char* s) const { tsim_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct FingerDeleter {
  void operator()(tsim_finger* f) const { tsim_finger_free(f); }
};
struct SolutionDeleter {
  void operator()(tsim_solution* s) const { tsim_solution_free(s); }
};
struct SweepDeleter {
  void operator()(tsim_sweep* s) const { tsim_sweep_free(s); }
};
struct WorkspaceDeleter {
  void operator()(tsim_workspace* w) const { tsim_workspace_free(w); }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(fmt::format("{}: '{}' is not a number", what, text));
  }
}

bool strip_prefix(std::string& text, const std::string& prefix) {
  if (text.rfind(prefix, 0) != 0) return false;
  text.erase(0, prefix.size());
  return true;
}

// Meters by default; "mm:" and "m:" prefixes are accepted.
double parse_length(std::string text, const std::string& what) {
  if (strip_prefix(text, "mm:")) return parse_double(text, what) * 1e-3;
  strip_prefix(text, "m:");
  return parse_double(text, what);
}

// Radians by default; "deg:" prefix for degrees.
double parse_angle(std::string text, const std::string& what) {
  if (strip_prefix(text, "deg:")) return parse_double(text, what) * std::numbers::pi / 180.0;
  strip_prefix(text, "rad:");
  return parse_double(text, what);
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_double(item, what));
  }
  return out;
}

std::array<double, 2> parse_pair(const std::string& text, const std::string& what) {
  const auto v = parse_list(text, what);
  if (v.size() != 2) throw UsageError(fmt::format("{}: expected two comma-separated numbers", what));
  return {v[0], v[1]};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError(fmt::format("cannot open '{}' for writing", path));
  out << text;
  if (!out.flush()) throw UsageError(fmt::format("failed writing '{}'", path));
}

struct Globals {
  std::string config = "fingers/default.json";
  std::string out;
  std::string format;
  double threshold = 0.0;  // 0 = from config
  int max_iter = 0;        // 0 = from config
  std::string model;
};

struct PoseArgs {
  std::string q;
  std::string theta1;
};

struct LoadArgs {
  std::string force = "0,0";
  double moment = 0.0;
  std::string point;
};

class Session {
 public:
  explicit Session(const Globals& g) : g_(g) {
    tsim_finger* f = nullptr;
    status_ = tsim_finger_load(g.config.c_str(), &f);
    finger_.reset(f);
  }

  bool ok() const { return status_ == TSIM_OK; }
  tsim_status status() const { return status_; }
  tsim_finger* finger() const { return finger_.get(); }

  tsim_solver_options options() const {
    tsim_solver_options o;
    tsim_finger_solver_options(finger_.get(), &o);
    if (g_.threshold > 0.0) o.threshold = g_.threshold;
    if (g_.max_iter > 0) o.max_iterations = g_.max_iter;
    if (g_.model == "literal") o.model = TSIM_MODEL_LITERAL;
    if (g_.model == "virtual-work") o.model = TSIM_MODEL_VIRTUAL_WORK;
    return o;
  }

  double displacement(const PoseArgs& pose) const {
    if (!pose.q.empty() && !pose.theta1.empty())
      throw UsageError("give either --q or --theta1, not both");
    if (!pose.theta1.empty()) {
      double radii[3];
      tsim_finger_guide_radii(finger_.get(), radii);
      return parse_angle(pose.theta1, "--theta1") * radii[0];
    }
    return pose.q.empty() ? 0.0 : parse_length(pose.q, "--q");
  }

  double total_length() const {
    double l = 0.0;
    tsim_finger_total_length(finger_.get(), &l);
    return l;
  }

 private:
  const Globals& g_;
  tsim_status status_ = TSIM_OK;
  std::unique_ptr<tsim_finger, FingerDeleter> finger_;
};

tsim_load make_load(const LoadArgs& args) {
  tsim_load load{};
  const auto f = parse_pair(args.force, "--force");
  load.force[0] = f[0];
  load.force[1] = f[1];
  load.moment = args.moment;
  if (!args.point.empty()) {
    const auto p = parse_pair(args.point, "--point");
    load.has_point = 1;
    load.point[0] = p[0];
    load.point[1] = p[1];
  }
  return load;
}

std::string format_or(const Globals& g, const std::string& fallback) {
  return g.format.empty() ? fallback : g.format;
}

int cmd_fk(const Globals& g, const PoseArgs& pose) {
  Session s(g);
  if (!s.ok()) return report(s.status());
  tsim_kinematics k;
  const auto st = tsim_kinematics_at(s.finger(), s.displacement(pose), &k);
  if (st != TSIM_OK) return report(st);
  constexpr double deg = 180.0 / std::numbers::pi;
  std::string text;
  const auto fmt_name = format_or(g, "text");
  if (fmt_name == "json") {
    text = fmt::format(
        "{{\n  \"q_m\": {},\n  \"theta_rad\": [{}, {}, {}],\n  \"theta_deg\": [{}, {}, {}],\n"
        "  \"fingertip_mm\": [{}, {}],\n  \"jacobian\": [{}, {}]\n}}\n",
        k.q, k.theta[0], k.theta[1], k.theta[2], k.theta[0] * deg, k.theta[1] * deg,
        k.theta[2] * deg, k.tip[0] * 1e3, k.tip[1] * 1e3, k.jacobian[0], k.jacobian[1]);
  } else if (fmt_name == "csv") {
    text = fmt::format(
        "q_m,theta1_rad,theta2_rad,theta3_rad,theta1_deg,theta2_deg,theta3_deg,x_mm,y_mm,"
        "jacobian_x,jacobian_y\n{:.9f},{:.9f},{:.9f},{:.9f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},"
        "{:.9f},{:.9f}\n",
        k.q, k.theta[0], k.theta[1], k.theta[2], k.theta[0] * deg, k.theta[1] * deg,
        k.theta[2] * deg, k.tip[0] * 1e3 + 0.0, k.tip[1] * 1e3 + 0.0, k.jacobian[0] + 0.0,
        k.jacobian[1]);
  } else {
    text = fmt::format(
        "q          {:.6f} mm\n"
        "theta      {:.6f} {:.6f} {:.6f} rad\n"
        "           {:.4f} {:.4f} {:.4f} deg\n"
        "fingertip  ({:.3f}, {:.3f}) mm\n"
        "jacobian   ({:.6f}, {:.6f}) m/m\n",
        k.q * 1e3, k.theta[0], k.theta[1], k.theta[2], k.theta[0] * deg, k.theta[1] * deg,
        k.theta[2] * deg, k.tip[0] * 1e3 + 0.0, k.tip[1] * 1e3 + 0.0, k.jacobian[0] + 0.0,
        k.jacobian[1]);
  }
  write_output(g.out, text);
  return kExitOk;
}

int cmd_workspace(const Globals& g, int resolution, const std::string& cell) {
  Session s(g);
  if (!s.ok()) return report(s.status());
  tsim_workspace* raw = nullptr;
  auto st = tsim_workspace_sweep(s.finger(), resolution, &raw);
  std::unique_ptr<tsim_workspace, WorkspaceDeleter> ws(raw);
  if (st != TSIM_OK) return report(st);

  char *csv = nullptr, *pgm = nullptr, *sidecar = nullptr;
  st = tsim_workspace_csv(ws.get(), &csv);
  CString csv_owner(csv);
  if (st != TSIM_OK) return report(st);
  tsim_occupancy_info info;
  st = tsim_workspace_occupancy(ws.get(), parse_length(cell, "--cell-size"), &info, &pgm,
                                &sidecar);
  CString pgm_owner(pgm), sidecar_owner(sidecar);
  if (st != TSIM_OK) return report(st);

  const std::string prefix = g.out.empty() ? "workspace" : g.out;
  write_output(prefix + ".csv", csv);
  write_output(prefix + ".pgm", pgm);
  write_output(prefix + ".json", sidecar);
  for (int link = 1; link <= 3; ++link) {
    std::cout << fmt::format("link {}: {} points, area {:.6e} m^2\n", link,
                             tsim_workspace_point_count(ws.get(), link),
                             info.link_area[link - 1]);
  }
  std::cout << fmt::format("union area {:.6e} m^2, link 1/2 overlap {:.6e} m^2\n",
                           info.union_area, info.overlap_link1_link2);
  return kExitOk;
}

int cmd_solve(const Globals& g, const PoseArgs& pose, const LoadArgs& load_args) {
  Session s(g);
  if (!s.ok()) return report(s.status());
  const auto load = make_load(load_args);
  const auto options = s.options();
  tsim_solution* raw = nullptr;
  const auto st = tsim_solve_static(s.finger(), s.displacement(pose), &load, &options, &raw);
  std::unique_ptr<tsim_solution, SolutionDeleter> sol(raw);
  if (sol) {
    char* json = nullptr;
    const auto js = tsim_solution_json(sol.get(), &json);
    CString owner(json);
    if (js != TSIM_OK) return report(js);
    write_output(g.out, json);
  }
  if (st != TSIM_OK) return report(st);
  return kExitOk;
}

std::unique_ptr<tsim_sweep, SweepDeleter> run_sweep(const Session& s, const PoseArgs& pose,
                                                    const std::string& payloads,
                                                    tsim_status& st) {
  const auto list = parse_list(payloads, "--payloads");
  if (list.empty()) throw UsageError("--payloads: the payload list is empty");
  const auto options = s.options();
  tsim_sweep* raw = nullptr;
  st = tsim_stiffness_sweep(s.finger(), s.displacement(pose), list.data(), list.size(), &options,
                            &raw);
  return std::unique_ptr<tsim_sweep, SweepDeleter>(raw);
}

// Worst row outcome: no convergence beats infeasible beats ok.
int rows_exit_code(const tsim_sweep* sweep) {
  int code = kExitOk;
  for (size_t i = 0; i < tsim_sweep_size(sweep); ++i) {
    tsim_sweep_row row;
    tsim_sweep_row_get(sweep, i, &row);
    const int c = exit_code(row.status);
    if (c == kExitNoConvergence || (c != kExitOk && code == kExitOk)) code = c;
  }
  return code;
}

std::string sweep_json(const tsim_sweep* sweep) {
  std::string out = "{\n  \"rows\": [";
  for (size_t i = 0; i < tsim_sweep_size(sweep); ++i) {
    tsim_sweep_row r;
    tsim_sweep_row_get(sweep, i, &r);
    auto num = [](double v) { return std::isfinite(v) ? fmt::format("{}", v) : "null"; };
    out += fmt::format(
        "{}\n    {{\"payload_kg\": {}, \"deflection_mm\": {}, \"stiffness_N_per_m\": {}, "
        "\"iterations\": {}, \"status\": \"{}\"}}",
        i == 0 ? "" : ",", r.payload_kg, num(r.deflection_m * 1e3), num(r.stiffness),
        r.iterations, tsim_status_name(r.status));
  }
  return out + "\n  ]\n}\n";
}

int cmd_stiffness(const Globals& g, const PoseArgs& pose, const std::string& payloads) {
  Session s(g);
  if (!s.ok()) return report(s.status());
  tsim_status st;
  auto sweep = run_sweep(s, pose, payloads, st);
  if (st != TSIM_OK) return report(st);
  if (format_or(g, "csv") == "json") {
    write_output(g.out, sweep_json(sweep.get()));
  } else {
    char* csv = nullptr;
    tsim_sweep_csv(sweep.get(), &csv);
    CString owner(csv);
    write_output(g.out, csv);
  }
  return rows_exit_code(sweep.get());
}

int cmd_validate(const Globals& g, const PoseArgs& pose, const std::string& payloads,
                 const std::string& reference) {
  Session s(g);
  if (!s.ok()) return report(s.status());
  tsim_status st;
  auto sweep = run_sweep(s, pose, payloads, st);
  if (st != TSIM_OK) return report(st);
  if (!reference.empty()) {
    st = tsim_sweep_load_reference(sweep.get(), reference.c_str(), nullptr);
    if (st != TSIM_OK) return report(st);
  }
  char *csv = nullptr, *summary = nullptr;
  tsim_validation_csv(sweep.get(), &csv);
  tsim_validation_summary(sweep.get(), &summary);
  CString csv_owner(csv), summary_owner(summary);
  if (format_or(g, "csv") == "json") {
    write_output(g.out, sweep_json(sweep.get()));
  } else {
    write_output(g.out, csv);
  }
  // Keep stdout clean when it carries the table.
  (g.out.empty() ? std::cerr : std::cout) << summary;
  return rows_exit_code(sweep.get());
}

int cmd_oracle(const Globals& g, const PoseArgs& pose, const LoadArgs& load_args, int grid,
               int rounds, double tolerance) {
  Session s(g);
  if (!s.ok()) return report(s.status());
  const auto load = make_load(load_args);
  const auto options = s.options();
  char* json = nullptr;
  int agree = 0;
  const auto st = tsim_oracle_check(s.finger(), s.displacement(pose), &load, &options, grid,
                                    rounds, tolerance, &json, &agree);
  CString owner(json);
  if (st != TSIM_OK) return report(st);
  write_output(g.out, json);
  std::cerr << (agree ? "fixed point and energy oracle agree\n"
                      : "fixed point and energy oracle disagree; see report\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tendon-driven under-actuated finger simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "Finger config document (JSON)");
  app.add_option("--out", g.out, "Output file (workspace: output prefix)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threshold", g.threshold, "Fixed-point threshold [m]")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iter", g.max_iter, "Fixed-point iteration cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--model", g.model, "Statics closure")
      ->check(CLI::IsMember({"literal", "virtual-work"}));

  PoseArgs pose;
  auto add_pose = [&](CLI::App* sub) {
    sub->add_option("--q", pose.q, "Actuator displacement [m] (or mm:<value>)");
    sub->add_option("--theta1", pose.theta1, "Joint-1 angle [rad] (or deg:<value>)");
  };
  LoadArgs load;
  auto add_load = [&](CLI::App* sub) {
    sub->add_option("--force", load.force, "Tip force fx,fy [N]");
    sub->add_option("--moment", load.moment, "Tip moment [N m]");
    sub->add_option("--point", load.point, "Force application point x,y [m], base frame");
  };

  auto* fk = app.add_subcommand("fk", "Joint angles, fingertip and Jacobian at q");
  add_pose(fk);

  int resolution = 100;
  std::string cell = "0.001";
  auto* ws = app.add_subcommand("workspace", "Sweep the reachable workspace");
  ws->add_option("--resolution", resolution, "Samples per swept variable (>= 2)");
  ws->add_option("--cell-size", cell, "Occupancy cell size [m] (or mm:<value>)");

  auto* solve = app.add_subcommand("solve", "Static equilibrium under load");
  add_pose(solve);
  add_load(solve);

  std::string payloads = "0.5,1.0,1.5,2.0,2.5,3.0";
  auto* stiffness = app.add_subcommand("stiffness", "Tip payload sweep");
  add_pose(stiffness);
  stiffness->add_option("--payloads", payloads, "Comma-separated payloads [kg]");

  std::string reference;
  auto* validate = app.add_subcommand("validate", "Payload sweep with reference comparison");
  add_pose(validate);
  validate->add_option("--payloads", payloads, "Comma-separated payloads [kg]");
  validate->add_option("--reference", reference, "Reference CSV (payload_kg,deflection_mm)");

  int grid = 11, rounds = 16;
  double tolerance = 0.01;
  auto* oracle = app.add_subcommand("oracle-check", "Cross-check the fixed point by energy");
  add_pose(oracle);
  add_load(oracle);
  oracle->add_option("--grid", grid, "Grid samples per axis (>= 11)");
  oracle->add_option("--rounds", rounds, "Refinement rounds");
  oracle->add_option("--tolerance", tolerance, "Agreement tolerance, fraction of finger length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fk) return cmd_fk(g, pose);
    if (*ws) return cmd_workspace(g, resolution, cell);
    if (*solve) return cmd_solve(g, pose, load);
    if (*stiffness) return cmd_stiffness(g, pose, payloads);
    if (*validate) return cmd_validate(g, pose, payloads, reference);
    if (*oracle) return cmd_oracle(g, pose, load, grid, rounds, tolerance);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
