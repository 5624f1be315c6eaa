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

#include "pragmasim/config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace pragmasim {

namespace {

constexpr int kConfigVersion = 1;

void check_keys(const nlohmann::json& object, const std::string& where,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) +
                        "' in config file");
    }
  }
}

template <typename T>
void read(const nlohmann::json& object, const std::string& where, const std::string& key,
          T& out) {
  if (!object.contains(key)) return;
  try {
    out = object.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad value for '" + where + "." + key + "': " + e.what());
  }
}

void read_selection(const nlohmann::json& object, const std::string& where,
                    SelectionMode& out) {
  if (!object.contains("selection")) return;
  try {
    out = selection_mode_from_string(object.at("selection").get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError("bad value for '" + where + ".selection': " + e.what());
  }
}

void read_distractors(const nlohmann::json& object, const std::string& where, int& n_objects) {
  if (!object.contains("distractors")) return;
  int distractors = 0;
  read(object, where, "distractors", distractors);
  if (distractors < 1) throw ConfigError("'" + where + ".distractors' must be >= 1");
  n_objects = distractors + 1;
}

void apply_train_section(const nlohmann::json& section, TrainConfig& train) {
  check_keys(section, "train",
             {"speaker_level", "listener_level", "corr", "distractors", "cost", "steps",
              "batch_size", "lr", "weight_decay", "dim", "init_scale", "selection", "seed"});
  read(section, "train", "speaker_level", train.speaker_level);
  read(section, "train", "listener_level", train.listener_level);
  read(section, "train", "corr", train.corr);
  read_distractors(section, "train", train.n_objects);
  read(section, "train", "cost", train.word_cost);
  read(section, "train", "steps", train.steps);
  read(section, "train", "batch_size", train.batch_size);
  read(section, "train", "lr", train.optimizer.lr);
  read(section, "train", "weight_decay", train.optimizer.weight_decay);
  read(section, "train", "dim", train.dim);
  read(section, "train", "init_scale", train.init_scale);
  read_selection(section, "train", train.selection);
  read(section, "train", "seed", train.seed);
}

void apply_eval_section(const nlohmann::json& section, EvalConfig& eval) {
  check_keys(section, "eval",
             {"listener_level", "speaker_level", "corr", "distractors", "cost", "constellations",
              "games_per_constellation", "selection", "seed"});
  read(section, "eval", "listener_level", eval.listener_eval_level);
  read(section, "eval", "speaker_level", eval.speaker_eval_level);
  read(section, "eval", "corr", eval.corr);
  read_distractors(section, "eval", eval.n_objects);
  read(section, "eval", "cost", eval.word_cost);
  read(section, "eval", "constellations", eval.constellations);
  read(section, "eval", "games_per_constellation", eval.games_per_constellation);
  read_selection(section, "eval", eval.selection);
  read(section, "eval", "seed", eval.seed);
}

void apply_table1_section(const nlohmann::json& section, Table1Config& table1) {
  check_keys(section, "table1",
             {"distractors", "corr", "cost", "constellations", "games_per_constellation",
              "selection", "seed"});
  read(section, "table1", "distractors", table1.distractor_counts);
  read(section, "table1", "corr", table1.corr);
  read(section, "table1", "cost", table1.word_cost);
  read(section, "table1", "constellations", table1.constellations);
  read(section, "table1", "games_per_constellation", table1.games_per_constellation);
  read_selection(section, "table1", table1.selection);
  read(section, "table1", "seed", table1.seed);
}

void apply_fig3_section(const nlohmann::json& section, RunConfig& config) {
  check_keys(section, "fig3", {"environments"});
  if (!section.contains("environments")) return;
  std::vector<std::pair<int, int>> environments;
  for (const auto& env : section.at("environments")) {
    if (!env.is_object()) throw ConfigError("'fig3.environments' entries must be objects");
    check_keys(env, "fig3.environments[]", {"distractors", "corr"});
    int distractors = 0, corr = 0;
    read(env, "fig3.environments[]", "distractors", distractors);
    read(env, "fig3.environments[]", "corr", corr);
    if (distractors < 1) throw ConfigError("'fig3.environments[].distractors' must be >= 1");
    environments.push_back({distractors + 1, corr});
  }
  config.fig3_environments = std::move(environments);
}

}  // namespace

void apply_preset(RunConfig& config, const std::string& name) {
  if (name == "desk") {
    config.train.steps = 2000;
    config.train.optimizer.lr = 1e-3;
    config.train.batch_size = 32;
    config.eval.games_per_constellation = 1000;
    config.table1.games_per_constellation = 1000;
  } else if (name == "paper") {
    config.train.steps = 25920;
    config.train.optimizer.lr = 1e-5;
    config.train.batch_size = 32;
    config.eval.games_per_constellation = 3200;
    config.table1.games_per_constellation = 3200;
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected 'desk' or 'paper')");
  }
  config.preset = name;
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object: " + path);

  check_keys(j, "", {"version", "preset", "seed", "out_dir", "train", "eval", "table1", "fig3",
                     "fig4"});
  int version = kConfigVersion;
  read(j, "", "version", version);
  if (version != kConfigVersion) {
    throw ConfigError("unsupported config version " + std::to_string(version));
  }

  // Preset first, so explicit file fields override its scale knobs.
  if (j.contains("preset")) {
    std::string preset;
    read(j, "", "preset", preset);
    apply_preset(config, preset);
  }
  if (j.contains("seed")) {
    uint64_t seed = 0;
    read(j, "", "seed", seed);
    set_all_seeds(config, seed);
  }
  read(j, "", "out_dir", config.out_dir);

  if (j.contains("train")) apply_train_section(j.at("train"), config.train);
  if (j.contains("eval")) apply_eval_section(j.at("eval"), config.eval);
  if (j.contains("table1")) apply_table1_section(j.at("table1"), config.table1);
  if (j.contains("fig3")) apply_fig3_section(j.at("fig3"), config);
  if (j.contains("fig4")) {
    check_keys(j.at("fig4"), "fig4", {"eval_every"});
    read(j.at("fig4"), "fig4", "eval_every", config.fig4_eval_every);
    if (config.fig4_eval_every < 1) throw ConfigError("'fig4.eval_every' must be >= 1");
  }
}

void set_all_seeds(RunConfig& config, uint64_t seed) {
  config.seed = seed;
  config.train.seed = seed;
  config.eval.seed = seed;
  config.table1.seed = seed;
}

}  // namespace pragmasim
