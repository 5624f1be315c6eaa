// Copyright 2026 The pragmasim Authors
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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pragmasim/experiments.hpp"
#include "pragmasim/learning.hpp"

namespace pragmasim {

// Invalid or unknown configuration input (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The resolved run configuration: defaults, overlaid by a named preset, then
// by a JSON config file, then by command-line flags. Distractor counts are
// user-facing (n_objects - 1).
struct RunConfig {
  std::string preset = "desk";
  uint64_t seed = 7;
  std::string out_dir = "out";
  TrainConfig train;
  EvalConfig eval;
  Table1Config table1;
  std::vector<std::pair<int, int>> fig3_environments = {{3, 0}, {3, 1}, {4, 0},
                                                        {4, 1}, {5, 0}, {5, 1}};
  int fig4_eval_every = 100;
};

// Applies the named preset ("desk" or "paper") to the scale knobs: desk uses
// 2000 steps / lr 1e-3 / 1000 games per constellation, paper uses 25920 steps
// / lr 1e-5 / 3200 games per constellation.
void apply_preset(RunConfig& config, const std::string& name);

// Loads a versioned JSON run-configuration file over `config`. Unknown keys
// are rejected with the offending key path; type errors carry the parser's
// message. Throws ConfigError.
void apply_config_file(RunConfig& config, const std::string& path);

// Sets every seed field (top-level, train, eval, table1).
void set_all_seeds(RunConfig& config, uint64_t seed);

}  // namespace pragmasim
