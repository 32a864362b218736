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

#include "tendonsim/report.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace tendonsim {
namespace {

using ojson = nlohmann::ordered_json;

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

ojson maybe(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson angles(const std::array<double, 3>& theta) {
  ojson j;
  j["rad"] = {theta[0], theta[1], theta[2]};
  j["deg"] = {theta[0] * kRadToDeg, theta[1] * kRadToDeg, theta[2] * kRadToDeg};
  return j;
}

ojson lengths(const std::array<double, 3>& v) {
  ojson j;
  j["m"] = {v[0], v[1], v[2]};
  j["mm"] = {v[0] * 1e3, v[1] * 1e3, v[2] * 1e3};
  return j;
}

ojson point(const Vec2& p) {
  ojson j;
  j["m"] = {p.x(), p.y()};
  j["mm"] = {p.x() * 1e3, p.y() * 1e3};
  return j;
}

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return "nan";
  return fmt::format("{:.{}f}", v + 0.0, digits);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

}  // namespace

std::string solution_json(const StaticSolution& sol) {
  ojson j;
  j["model"] = to_string(sol.model);
  j["converged"] = sol.converged;
  j["q"] = {{"m", sol.nominal.q}, {"mm", sol.nominal.q * 1e3}};
  j["nominal_theta"] = angles(sol.nominal.theta);
  j["theta"] = angles(sol.configuration.theta);
  j["active_group"] = to_string(sol.tensions.active_group);
  j["tensions_N"] = {sol.tensions.tension[0], sol.tensions.tension[1], sol.tensions.tension[2]};
  j["fingertip"] = point(sol.fingertip.position);
  j["nominal_fingertip"] = point(sol.nominal_fingertip.position);
  j["deflection_y"] = {{"m", sol.deflection_y}, {"mm", sol.deflection_y * 1e3}};
  j["rest_lengths"] = lengths(sol.rest_lengths);
  j["elongated_lengths"] = lengths(sol.elongated_lengths);
  j["iterations"] = sol.iterations;
  j["residual_m"] = maybe(sol.residual);
  j["threshold_m"] = sol.threshold;
  ojson trace = ojson::array();
  for (const auto& r : sol.trace) {
    ojson row;
    row["k"] = r.k;
    row["theta_rad"] = {r.theta[0], r.theta[1], r.theta[2]};
    row["y_m"] = r.y;
    row["residual_m"] = maybe(r.residual);
    row["tensions_N"] = {r.tension[0], r.tension[1], r.tension[2]};
    trace.push_back(std::move(row));
  }
  j["trace"] = std::move(trace);
  return j.dump(2) + "\n";
}

std::string row_status(const SweepRow& row) {
  return row.error ? to_string(*row.error) : "ok";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) { return validation_csv(rows, nullptr); }

std::vector<ReferencePoint> read_reference_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot read '{}'", path.string()));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kConfig, "reference CSV is empty");
  const auto header = split(line);
  int payload_col = -1, deflection_col = -1;
  for (size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "payload_kg") payload_col = static_cast<int>(c);
    if (header[c] == "deflection_mm") deflection_col = static_cast<int>(c);
  }
  if (payload_col < 0 || deflection_col < 0) {
    throw Error(ErrorCode::kConfig,
                "reference CSV header needs 'payload_kg' and 'deflection_mm' columns");
  }
  std::vector<ReferencePoint> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    const auto need = static_cast<size_t>(std::max(payload_col, deflection_col));
    if (cells.size() <= need)
      throw Error(ErrorCode::kConfig, fmt::format("reference CSV line {} is short", line_no));
    try {
      out.push_back({std::stod(cells[payload_col]), std::stod(cells[deflection_col])});
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig, fmt::format("reference CSV line {}: not a number", line_no));
    }
  }
  return out;
}

ReferenceComparison compare_to_reference(const std::vector<SweepRow>& rows,
                                         const std::vector<ReferencePoint>& reference,
                                         double total_length_m) {
  ReferenceComparison cmp;
  cmp.reference_mm.resize(rows.size());
  cmp.error_mm.resize(rows.size());
  double sum = 0.0;
  for (size_t i = 0; i < rows.size(); ++i) {
    for (const auto& ref : reference) {
      if (std::abs(ref.payload_kg - rows[i].payload_kg) <= 1e-9) {
        cmp.reference_mm[i] = ref.deflection_mm;
        break;
      }
    }
    if (!cmp.reference_mm[i] || !rows[i].ok()) continue;
    const double err = std::abs(rows[i].deflection_m * 1e3 - *cmp.reference_mm[i]);
    cmp.error_mm[i] = err;
    cmp.max_error_mm = std::max(cmp.max_error_mm, err);
    sum += err;
    ++cmp.matched;
  }
  if (cmp.matched > 0) cmp.mean_error_mm = sum / cmp.matched;
  const double total_mm = total_length_m * 1e3;
  cmp.max_error_pct = 100.0 * cmp.max_error_mm / total_mm;
  cmp.mean_error_pct = 100.0 * cmp.mean_error_mm / total_mm;
  return cmp;
}

std::string validation_csv(const std::vector<SweepRow>& rows, const ReferenceComparison* cmp) {
  fmt::memory_buffer out;
  auto it = std::back_inserter(out);
  fmt::format_to(it, "payload_kg,deflection_mm,stiffness_N_per_m,iterations,status");
  if (cmp) fmt::format_to(it, ",reference_mm,error_mm");
  out.push_back('\n');
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double deflection_mm = r.error && r.iterations == 0 ? NAN : r.deflection_m * 1e3;
    fmt::format_to(it, "{},{},{},{},{}", fixed(r.payload_kg, 3), fixed(deflection_mm, 6),
                   fixed(r.stiffness, 3), r.iterations, row_status(r));
    if (cmp) {
      fmt::format_to(it, ",{},{}",
                     cmp->reference_mm[i] ? fixed(*cmp->reference_mm[i], 6) : std::string(),
                     cmp->error_mm[i] ? fixed(*cmp->error_mm[i], 6) : std::string());
    }
    out.push_back('\n');
  }
  return fmt::to_string(out);
}

std::string validation_summary(const std::vector<SweepRow>& rows, const ReferenceComparison* cmp,
                               double total_length_m) {
  int ok = 0;
  for (const auto& r : rows) ok += r.ok();
  std::string s = fmt::format("rows: {} ({} ok, {} failed)\n", rows.size(), ok,
                              rows.size() - static_cast<size_t>(ok));
  if (!rows.empty() && rows.back().ok()) {
    s += fmt::format("at {:.3f} kg: deflection {:.3f} mm, secant stiffness {:.1f} N/m\n",
                     rows.back().payload_kg, rows.back().deflection_m * 1e3, rows.back().stiffness);
  }
  if (cmp) {
    s += fmt::format(
        "reference rows matched: {}\n"
        "maximum error: {:.3f} mm ({:.3f}% of {:.1f} mm finger length)\n"
        "mean error: {:.3f} mm ({:.3f}% of {:.1f} mm finger length)\n",
        cmp->matched, cmp->max_error_mm, cmp->max_error_pct, total_length_m * 1e3,
        cmp->mean_error_mm, cmp->mean_error_pct, total_length_m * 1e3);
  }
  return s;
}

}  // namespace tendonsim
