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

#include <vector>

#include "json.hpp"
#include "pragmasim/core.hpp"
#include "pragmasim/rng.hpp"

namespace pragmasim {

// Dirichlet concentration setup for the game generator. With corr=0 every
// distribution is drawn with all concentrations at alpha_base. With corr=1
// each conditional row i gets alpha_boost at index i and at one uniformly
// drawn other index, which biases contexts toward shared features.
struct ConcentrationConfig {
  int corr = 0;
  double alpha_base = 1.0;
  double alpha_boost = 5.0;
};

// The four sampled distributions behind a game generator: feature priors and
// the conditionals that couple distractor features to the target's.
struct GeneratorParams {
  ProbVec p_shape;                           // 5 entries
  ProbVec p_color;                           // 6 entries
  std::vector<ProbVec> p_shape_given_shape;  // 5 rows of 5
  std::vector<ProbVec> p_color_given_color;  // 6 rows of 6

  friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

// Draws the four distributions for the standard 6-color/5-shape world.
// Priors always use all-base concentrations; conditionals follow corr.
GeneratorParams sample_generator_params(const ConcentrationConfig& config, SeededRng& rng);

// Samples one game: target features from the priors, then a chain of
// distractors where each draws its shape from P(S|S=previous shape) and its
// color from P(C|C=previous color), starting from the target. Distractors
// identical to the target are rejection-resampled (throws
// RejectionOverflowError after 1000 consecutive failures); the target's
// position in the object list is uniform.
GameContext sample_game(const GeneratorParams& params, int n_objects, SeededRng& rng);

struct ConstellationSample {
  GeneratorParams params;
  std::vector<GameContext> games;
};

// Independent generator draws ("constellations"), each with its own batch of
// games. Evaluation defaults elsewhere are 10 constellations x 3200 games at
// paper scale and 10 x 1000 at desk scale.
std::vector<ConstellationSample> sample_eval_suite(const ConcentrationConfig& config,
                                                   int constellations, int games_per,
                                                   int n_objects, SeededRng& rng);

// JSON layouts (documented in docs/FORMATS.md).
nlohmann::json to_json(const GeneratorParams& params);
GeneratorParams generator_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GameContext& context);
GameContext game_context_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<ConstellationSample>& suite);

}  // namespace pragmasim
