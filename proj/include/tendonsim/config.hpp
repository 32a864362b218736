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

// Finger config documents (JSON). Every document carries an explicit
// `units` block; values are converted to SI here and nowhere else. Unknown
// keys are rejected. The schema is described in docs/config.md.

#ifndef TENDONSIM_CONFIG_HPP_
#define TENDONSIM_CONFIG_HPP_

#include <filesystem>
#include <string>

#include "tendonsim/statics.hpp"
#include "tendonsim/types.hpp"

namespace tendonsim {

struct FingerConfig {
  Finger finger;
  SolverOptions solver;
};

/// Parses a config document. A `tendons` entry given as a string is resolved
/// relative to `base_dir`. Throws Error(kConfig) naming the offending key.
FingerConfig parse_config(const std::string& json_text,
                          const std::filesystem::path& base_dir = {});

/// Throws Error(kIo) if the file cannot be read.
FingerConfig load_config_file(const std::filesystem::path& path);

}  // namespace tendonsim

#endif  // TENDONSIM_CONFIG_HPP_
