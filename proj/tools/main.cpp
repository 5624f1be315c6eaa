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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pragmasim/config.hpp"
#include "pragmasim/report.hpp"
#include "pragmasim/selfcheck.hpp"

namespace {

using namespace pragmasim;

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> preset;
  std::optional<std::string> out;
  std::optional<uint64_t> seed;
  std::optional<int> corr;
  std::optional<int> distractors;
  std::optional<double> cost;
  std::optional<int> speaker_level;
  std::optional<int> listener_level;
  std::string checkpoint;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "JSON run-configuration file");
  cmd->add_option("--preset", flags.preset, "configuration preset: desk or paper");
  cmd->add_option("--out", flags.out, "output directory (default: out)");
  cmd->add_option("--seed", flags.seed, "seed for every random stream");
}

void add_environment_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--corr", flags.corr, "feature-correlation flag (0 or 1)")
      ->check(CLI::Range(0, 1));
  cmd->add_option("--distractors", flags.distractors, "distractors per game (objects - 1)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--cost", flags.cost, "per-word message cost")
      ->check(CLI::NonNegativeNumber);
}

void add_level_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--speaker-level", flags.speaker_level, "speaker reasoning level");
  cmd->add_option("--listener-level", flags.listener_level, "listener reasoning level");
}

// defaults < --preset < config file < remaining flags
RunConfig resolve(const Flags& flags) {
  RunConfig config;
  if (flags.preset) apply_preset(config, *flags.preset);
  if (flags.config) apply_config_file(config, *flags.config);
  if (flags.seed) set_all_seeds(config, *flags.seed);
  if (flags.out) config.out_dir = *flags.out;
  return config;
}

void apply_train_flags(const Flags& flags, TrainConfig& train) {
  if (flags.corr) train.corr = *flags.corr;
  if (flags.distractors) train.n_objects = *flags.distractors + 1;
  if (flags.cost) train.word_cost = *flags.cost;
  if (flags.speaker_level) train.speaker_level = *flags.speaker_level;
  if (flags.listener_level) train.listener_level = *flags.listener_level;
}

void apply_eval_flags(const Flags& flags, EvalConfig& eval) {
  if (flags.corr) eval.corr = *flags.corr;
  if (flags.distractors) eval.n_objects = *flags.distractors + 1;
  if (flags.cost) eval.word_cost = *flags.cost;
  if (flags.speaker_level) eval.speaker_eval_level = *flags.speaker_level;
  if (flags.listener_level) eval.listener_eval_level = *flags.listener_level;
}

void print_written(const std::vector<std::string>& paths) {
  for (const std::string& path : paths) std::cout << "wrote " << path << "\n";
}

LexiconParams load_checkpoint_or_config_error(const std::string& path, nlohmann::json* meta) {
  try {
    return load_checkpoint(path, meta);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

int cmd_selftest() {
  bool all_passed = true;
  for (const check::SuiteResult& result : check::run_all_suites()) {
    std::cout << check::format_suite_line(result) << "\n";
    all_passed = all_passed && result.passed;
  }
  std::cout << (all_passed ? "selftest: all suites passed\n" : "selftest: FAILURES\n");
  return all_passed ? 0 : 1;
}

int cmd_train(const Flags& flags) {
  RunConfig config = resolve(flags);
  apply_train_flags(flags, config.train);
  TrainResult result = train(config.train);
  print_written(write_train_outputs(result, config.train, config.out_dir));
  return 0;
}

int cmd_eval(const Flags& flags) {
  RunConfig config = resolve(flags);
  apply_eval_flags(flags, config.eval);
  LexiconParams params = load_checkpoint_or_config_error(flags.checkpoint, nullptr);
  Metrics metrics = evaluate(EmbeddingLexicon(params), config.eval);
  print_written(write_eval_report(metrics, config.eval, config.out_dir));
  return 0;
}

int cmd_table1(const Flags& flags) {
  RunConfig config = resolve(flags);
  if (flags.corr) config.table1.corr = *flags.corr;
  if (flags.cost) config.table1.word_cost = *flags.cost;
  if (flags.distractors) config.table1.distractor_counts = {*flags.distractors};
  print_written(write_table1_report(run_table1(config.table1), config.out_dir));
  return 0;
}

int cmd_table2(const Flags& flags) {
  RunConfig config = resolve(flags);
  apply_eval_flags(flags, config.eval);
  nlohmann::json meta;
  LexiconParams params = load_checkpoint_or_config_error(flags.checkpoint, &meta);
  if (meta.contains("train_config") &&
      meta["train_config"].value("listener_level", 0) != 0) {
    std::cerr << "warning: checkpoint was not trained as a level-0 listener\n";
  }
  print_written(write_table2_report(run_table2(params, config.eval), config.out_dir));
  return 0;
}

int cmd_table3(const Flags& flags) {
  RunConfig config = resolve(flags);
  apply_eval_flags(flags, config.eval);
  Table3Config table3;
  table3.eval_base = config.eval;
  // Training happens in the evaluation environment.
  table3.train_base = config.train;
  table3.train_base.n_objects = config.eval.n_objects;
  table3.train_base.corr = config.eval.corr;
  table3.train_base.word_cost = config.eval.word_cost;
  print_written(write_table3_report(run_table3(table3), config.out_dir));
  return 0;
}

int cmd_fig3(const Flags& flags) {
  RunConfig config = resolve(flags);
  if (flags.cost) {
    config.train.word_cost = *flags.cost;
    config.eval.word_cost = *flags.cost;
  }
  PairingsConfig pairings;
  pairings.environments = config.fig3_environments;
  pairings.train_base = config.train;
  pairings.eval_base = config.eval;
  print_written(write_pairings_report(run_pairings(pairings), config.out_dir));
  return 0;
}

int cmd_fig4(const Flags& flags) {
  RunConfig config = resolve(flags);
  apply_eval_flags(flags, config.eval);
  CurvesConfig curves;
  curves.eval_every = config.fig4_eval_every;
  curves.train_base = config.train;
  curves.train_base.n_objects = config.eval.n_objects;
  curves.train_base.corr = config.eval.corr;
  curves.train_base.word_cost = config.eval.word_cost;
  if (flags.speaker_level) curves.train_base.speaker_level = *flags.speaker_level;
  curves.eval_base = config.eval;
  curves.eval_base.speaker_eval_level = curves.train_base.speaker_level;
  print_written(write_curves_report(run_learning_curves(curves), config.out_dir));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pragmasim: referential signaling games between reasoning speakers and listeners,\n"
      "with lexicon learning that differentiates through the reasoning itself"};
  app.require_subcommand(1);

  Flags flags;

  CLI::App* selftest = app.add_subcommand(
      "selftest", "run the built-in verification suites (reasoning, gradients, statistics)");

  CLI::App* train_cmd = app.add_subcommand("train", "train a listener lexicon, write a checkpoint");
  add_common_flags(train_cmd, flags);
  add_environment_flags(train_cmd, flags);
  add_level_flags(train_cmd, flags);

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate a trained checkpoint on a fresh seeded suite");
  add_common_flags(eval_cmd, flags);
  add_environment_flags(eval_cmd, flags);
  add_level_flags(eval_cmd, flags);
  eval_cmd->add_option("--checkpoint", flags.checkpoint, "lexicon checkpoint to evaluate")
      ->required();

  CLI::App* table1_cmd = app.add_subcommand(
      "table1", "average message length per speaker level and distractor count");
  add_common_flags(table1_cmd, flags);
  add_environment_flags(table1_cmd, flags);

  CLI::App* table2_cmd = app.add_subcommand(
      "table2", "evaluation-time level pairings for one trained lexicon (requires --checkpoint)");
  add_common_flags(table2_cmd, flags);
  add_environment_flags(table2_cmd, flags);
  table2_cmd->add_option("--checkpoint", flags.checkpoint, "level-0-trained lexicon checkpoint")
      ->required();

  CLI::App* table3_cmd = app.add_subcommand(
      "table3", "train four listeners from different speaker levels, evaluate each");
  add_common_flags(table3_cmd, flags);
  add_environment_flags(table3_cmd, flags);

  CLI::App* fig3_cmd = app.add_subcommand(
      "fig3", "all speaker/listener training pairs across environments, upgraded at evaluation");
  add_common_flags(fig3_cmd, flags);
  fig3_cmd->add_option("--cost", flags.cost, "per-word message cost")
      ->check(CLI::NonNegativeNumber);

  CLI::App* fig4_cmd = app.add_subcommand(
      "fig4", "learning curves for listener levels 0 and 2 with everything else fixed");
  add_common_flags(fig4_cmd, flags);
  add_environment_flags(fig4_cmd, flags);
  fig4_cmd->add_option("--speaker-level", flags.speaker_level, "teacher speaker level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (selftest->parsed()) return cmd_selftest();
    if (train_cmd->parsed()) return cmd_train(flags);
    if (eval_cmd->parsed()) return cmd_eval(flags);
    if (table1_cmd->parsed()) return cmd_table1(flags);
    if (table2_cmd->parsed()) return cmd_table2(flags);
    if (table3_cmd->parsed()) return cmd_table3(flags);
    if (fig3_cmd->parsed()) return cmd_fig3(flags);
    if (fig4_cmd->parsed()) return cmd_fig4(flags);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
