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

#include "pragmasim/worldgen.hpp"

#include <stdexcept>
#include <string>

namespace pragmasim {
namespace {

constexpr int kDuplicateRetryLimit = 1000;

void check_config(const ConcentrationConfig& config) {
  if (!(config.alpha_base > 0.0) || !(config.alpha_boost > 0.0)) {
    throw std::invalid_argument("concentration parameters must be positive");
  }
  if (config.corr != 0 && config.corr != 1) {
    throw std::invalid_argument("corr flag must be 0 or 1");
  }
}

ProbVec sample_prior(int size, double alpha_base, SeededRng& rng) {
  return ProbVec::from_weights(rng.dirichlet(std::vector<double>(size, alpha_base)));
}

// One conditional row. For corr=1 the boost lands on the row's own index and
// on a uniformly drawn *other* index, so the concentration total is fixed
// (e.g. shapes: 5+5+3*1, giving expected self-transition mass 5/13).
ProbVec sample_conditional_row(int size, int row, const ConcentrationConfig& config,
                               SeededRng& rng) {
  std::vector<double> alpha(static_cast<size_t>(size), config.alpha_base);
  if (config.corr == 1) {
    alpha[static_cast<size_t>(row)] = config.alpha_boost;
    int other = rng.uniform_int(size - 1);
    if (other >= row) ++other;
    alpha[static_cast<size_t>(other)] = config.alpha_boost;
  }
  return ProbVec::from_weights(rng.dirichlet(alpha));
}

}  // namespace

GeneratorParams sample_generator_params(const ConcentrationConfig& config, SeededRng& rng) {
  check_config(config);
  const Vocabulary& vocab = Vocabulary::standard();
  const int shapes = vocab.num_shapes();
  const int colors = vocab.num_colors();

  GeneratorParams params;
  params.p_shape = sample_prior(shapes, config.alpha_base, rng);
  params.p_color = sample_prior(colors, config.alpha_base, rng);
  params.p_shape_given_shape.reserve(shapes);
  for (int s = 0; s < shapes; ++s) {
    params.p_shape_given_shape.push_back(sample_conditional_row(shapes, s, config, rng));
  }
  params.p_color_given_color.reserve(colors);
  for (int c = 0; c < colors; ++c) {
    params.p_color_given_color.push_back(sample_conditional_row(colors, c, config, rng));
  }
  return params;
}

GameContext sample_game(const GeneratorParams& params, int n_objects, SeededRng& rng) {
  if (n_objects < 2) throw std::invalid_argument("a game needs at least two objects");

  ObjectFeatures target;
  target.shape = rng.categorical(params.p_shape.values());
  target.color = rng.categorical(params.p_color.values());

  // Distractors chain off the most recently sampled object, starting at the
  // target, so feature correlation decays with distance down the chain.
  std::vector<ObjectFeatures> distractors;
  distractors.reserve(static_cast<size_t>(n_objects - 1));
  ObjectFeatures previous = target;
  for (int d = 0; d < n_objects - 1; ++d) {
    const std::vector<double>& shape_row =
        params.p_shape_given_shape.at(previous.shape).values();
    const std::vector<double>& color_row =
        params.p_color_given_color.at(previous.color).values();
    int attempts = 0;
    for (;;) {
      ObjectFeatures candidate;
      candidate.shape = rng.categorical(shape_row);
      candidate.color = rng.categorical(color_row);
      if (!(candidate == target)) {
        distractors.push_back(candidate);
        previous = candidate;
        break;
      }
      if (++attempts >= kDuplicateRetryLimit) {
        throw RejectionOverflowError(
            "failed to sample a distractor distinct from the target after " +
            std::to_string(kDuplicateRetryLimit) + " attempts (degenerate generator params)");
      }
    }
  }

  GameContext context;
  context.target = rng.uniform_int(n_objects);
  context.objects = std::move(distractors);
  context.objects.insert(context.objects.begin() + context.target, target);
  return context;
}

std::vector<ConstellationSample> sample_eval_suite(const ConcentrationConfig& config,
                                                   int constellations, int games_per,
                                                   int n_objects, SeededRng& rng) {
  if (constellations < 1 || games_per < 1) {
    throw std::invalid_argument("suite needs at least one constellation and one game");
  }
  std::vector<ConstellationSample> suite;
  suite.reserve(static_cast<size_t>(constellations));
  for (int c = 0; c < constellations; ++c) {
    ConstellationSample sample;
    sample.params = sample_generator_params(config, rng);
    sample.games.reserve(static_cast<size_t>(games_per));
    for (int g = 0; g < games_per; ++g) {
      sample.games.push_back(sample_game(sample.params, n_objects, rng));
    }
    suite.push_back(std::move(sample));
  }
  return suite;
}

namespace {

nlohmann::json rows_to_json(const std::vector<ProbVec>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) out.push_back(row.values());
  return out;
}

std::vector<ProbVec> rows_from_json(const nlohmann::json& j) {
  std::vector<ProbVec> rows;
  for (const auto& row : j) {
    rows.push_back(ProbVec::from_probabilities(row.get<std::vector<double>>()));
  }
  return rows;
}

}  // namespace

nlohmann::json to_json(const GeneratorParams& params) {
  return nlohmann::json{{"p_shape", params.p_shape.values()},
                        {"p_color", params.p_color.values()},
                        {"p_shape_given_shape", rows_to_json(params.p_shape_given_shape)},
                        {"p_color_given_color", rows_to_json(params.p_color_given_color)}};
}

GeneratorParams generator_params_from_json(const nlohmann::json& j) {
  GeneratorParams params;
  params.p_shape = ProbVec::from_probabilities(j.at("p_shape").get<std::vector<double>>());
  params.p_color = ProbVec::from_probabilities(j.at("p_color").get<std::vector<double>>());
  params.p_shape_given_shape = rows_from_json(j.at("p_shape_given_shape"));
  params.p_color_given_color = rows_from_json(j.at("p_color_given_color"));
  return params;
}

nlohmann::json to_json(const GameContext& context) {
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& object : context.objects) {
    objects.push_back({{"color", object.color}, {"shape", object.shape}});
  }
  return nlohmann::json{{"objects", std::move(objects)}, {"target", context.target}};
}

GameContext game_context_from_json(const nlohmann::json& j) {
  GameContext context;
  for (const auto& object : j.at("objects")) {
    context.objects.push_back(
        ObjectFeatures{object.at("color").get<int>(), object.at("shape").get<int>()});
  }
  context.target = j.at("target").get<int>();
  validate_context(context, Vocabulary::standard());
  return context;
}

nlohmann::json to_json(const std::vector<ConstellationSample>& suite) {
  nlohmann::json constellations = nlohmann::json::array();
  for (const auto& sample : suite) {
    nlohmann::json games = nlohmann::json::array();
    for (const auto& game : sample.games) games.push_back(to_json(game));
    constellations.push_back({{"params", to_json(sample.params)}, {"games", std::move(games)}});
  }
  return nlohmann::json{{"constellations", std::move(constellations)}};
}

}  // namespace pragmasim
