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

// Text outputs: solution JSON, sweep and validation CSV, reference
// comparison. CSV uses '.' decimals, '\n' line ends and always has a header.

#ifndef TENDONSIM_REPORT_HPP_
#define TENDONSIM_REPORT_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tendonsim/statics.hpp"

namespace tendonsim {

/// Angles in rad and deg, lengths in m and mm, full iteration trace.
std::string solution_json(const StaticSolution& sol);

// Status column value for a sweep row: "ok" or the error name.
std::string row_status(const SweepRow& row);

/// payload_kg,deflection_mm,stiffness_N_per_m,iterations,status
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct ReferencePoint {
  double payload_kg = 0.0;
  double deflection_mm = 0.0;
};

/// Reads a CSV with a header containing `payload_kg` and `deflection_mm`
/// columns (other columns ignored). Throws kIo / kConfig.
std::vector<ReferencePoint> read_reference_csv(const std::filesystem::path& path);

struct ReferenceComparison {
  // Per sweep row: reference deflection and |predicted - reference|, when a
  // reference row with the same payload exists and the row succeeded.
  std::vector<std::optional<double>> reference_mm;
  std::vector<std::optional<double>> error_mm;
  int matched = 0;
  double max_error_mm = 0.0;
  double mean_error_mm = 0.0;
  double max_error_pct = 0.0;   // of total finger length
  double mean_error_pct = 0.0;
};

ReferenceComparison compare_to_reference(const std::vector<SweepRow>& rows,
                                         const std::vector<ReferencePoint>& reference,
                                         double total_length_m);

/// Sweep columns, plus reference_mm,error_mm when `cmp` is given.
std::string validation_csv(const std::vector<SweepRow>& rows,
                           const ReferenceComparison* cmp = nullptr);

std::string validation_summary(const std::vector<SweepRow>& rows,
                               const ReferenceComparison* cmp, double total_length_m);

}  // namespace tendonsim

#endif  // TENDONSIM_REPORT_HPP_
