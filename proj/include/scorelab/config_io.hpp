// Copyright 2026 The Scorelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCORELAB_CONFIG_IO_HPP_
#define SCORELAB_CONFIG_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "scorelab/experiments.hpp"

namespace scorelab {

// Run-control settings a config file may carry alongside the experiment
// definition.  Command-line flags override each of them.
struct RunOptions {
  std::optional<std::string> out;
  std::string format = "csv";
  bool check_inequality = false;
  int threads = 1;
};

struct LoadedConfig {
  ExperimentConfig experiment;
  RunOptions options;
  std::uint64_t config_hash = 0;  // FNV-1a of the raw config bytes
  bool seed_in_config = false;    // config carried an explicit "seed" key
};

// Parses and validates a JSON experiment config.  The schema mirrors
// ExperimentConfig (kebab-case keys, correction names as produced by
// correction_label); unknown keys anywhere are rejected.  Throws
// ConfigError on any schema or value problem.
LoadedConfig parse_experiment_config(const std::string& text);

// parse_experiment_config over the contents of `path`; throws IoError if
// the file cannot be read.
LoadedConfig load_experiment_config(const std::string& path);

// Inverse of correction_label; throws ConfigError on unknown names.
CorrectionTag correction_tag_from_label(const std::string& label);

}  // namespace scorelab

#endif  // SCORELAB_CONFIG_IO_HPP_
