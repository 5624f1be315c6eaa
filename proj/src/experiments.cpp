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

#include "pragmasim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pragmasim/worldgen.hpp"

namespace pragmasim {

EvalConfig desk_eval_config() { return EvalConfig{}; }

EvalConfig paper_eval_config() {
  EvalConfig config;
  config.games_per_constellation = 3200;
  return config;
}

Metrics evaluate(const Lexicon& lexicon, const EvalConfig& config) {
  if (config.constellations < 1 || config.games_per_constellation < 1) {
    throw std::invalid_argument("evaluation needs at least one constellation and one game");
  }
  const Vocabulary& vocab = Vocabulary::standard();
  const std::vector<Message> messages = enumerate_messages(vocab);
  const AgentSpec spec{1.0, config.word_cost, {}};
  GroundTruthLexicon speaker_lexicon(vocab);

  SeededRng rng(config.seed);
  const std::vector<ConstellationSample> suite =
      sample_eval_suite(ConcentrationConfig{config.corr, 1.0, 5.0}, config.constellations,
                        config.games_per_constellation, config.n_objects, rng);

  Metrics metrics;
  long length_sum = 0;
  for (const ConstellationSample& constellation : suite) {
    long constellation_correct = 0;
    for (const GameContext& game : constellation.games) {
      ProbVec speaker_dist = speaker(config.speaker_eval_level, speaker_lexicon, game,
                                     game.target, spec, vocab);
      Message msg = select_message(speaker_dist, messages, config.selection, &rng);
      ProbVec listener_dist =
          listener(config.listener_eval_level, lexicon, game, msg, spec, vocab);
      if (listener_dist.argmax() == game.target) ++constellation_correct;
      length_sum += msg.length();
    }
    metrics.correct_count += constellation_correct;
    metrics.per_constellation_accuracy.push_back(
        static_cast<double>(constellation_correct) / config.games_per_constellation);
  }
  metrics.total_count =
      static_cast<long>(config.constellations) * config.games_per_constellation;
  metrics.accuracy = static_cast<double>(metrics.correct_count) / metrics.total_count;
  metrics.avg_message_length = static_cast<double>(length_sum) / metrics.total_count;
  return metrics;
}

ContingencyTable make_contingency(const Metrics& a, const Metrics& b) {
  return ContingencyTable{a.correct_count, b.correct_count,
                          a.total_count - a.correct_count, b.total_count - b.correct_count};
}

namespace {

// log(k!) via a cumulative table, grown on demand.
double log_factorial(long k) {
  static std::vector<double> table{0.0};
  while (static_cast<long>(table.size()) <= k) {
    table.push_back(table.back() + std::log(static_cast<double>(table.size())));
  }
  return table[static_cast<size_t>(k)];
}

double log_choose(long n, long k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace

double fisher_exact(const ContingencyTable& table) {
  const long a = table.correct_a, b = table.correct_b;
  const long c = table.incorrect_a, d = table.incorrect_b;
  if (a < 0 || b < 0 || c < 0 || d < 0) {
    throw std::invalid_argument("contingency counts must be nonnegative");
  }
  const long row1 = a + b, row2 = c + d;
  const long col1 = a + c, col2 = b + d;
  const long n = row1 + row2;
  if (row1 == 0 || row2 == 0 || col1 == 0 || col2 == 0) return 1.0;

  // Hypergeometric enumeration over the free cell k = "correct in A".
  const double log_denominator = log_choose(n, col1);
  auto log_pmf = [&](long k) {
    return log_choose(row1, k) + log_choose(row2, col1 - k) - log_denominator;
  };
  const double log_observed = log_pmf(a);
  const long k_min = std::max(0L, col1 - row2);
  const long k_max = std::min(row1, col1);
  // Include tables whose probability is <= the observed one, with relative
  // slack for floating-point ties: p_k <= p_obs * (1 + 1e-7).
  const double threshold = log_observed + std::log1p(1e-7);
  double p = 0.0;
  long included = 0;
  for (long k = k_min; k <= k_max; ++k) {
    const double lp = log_pmf(k);
    if (lp <= threshold) {
      p += std::exp(lp);
      ++included;
    }
  }
  // Including every table means p = 1 exactly (the probabilities are a
  // complete distribution); bypass the accumulated rounding.
  if (included == k_max - k_min + 1) return 1.0;
  return std::min(p, 1.0);
}

std::string significance_stars(double p_value) {
  if (p_value < 0.01) return "**";
  if (p_value < 0.05) return "*";
  return "";
}

Table1Report run_table1(const Table1Config& config) {
  Table1Report report;
  report.config = config;
  const Vocabulary& vocab = Vocabulary::standard();
  GroundTruthLexicon gt(vocab);
  for (int distractors : config.distractor_counts) {
    Table1Report::Row row;
    row.distractors = distractors;
    for (int speaker_level : {1, 3}) {
      EvalConfig cell;
      cell.listener_eval_level = 0;  // lengths depend only on the speaker
      cell.speaker_eval_level = speaker_level;
      cell.corr = config.corr;
      cell.n_objects = distractors + 1;
      cell.word_cost = config.word_cost;
      cell.constellations = config.constellations;
      cell.games_per_constellation = config.games_per_constellation;
      cell.selection = config.selection;
      cell.seed = config.seed;
      Metrics metrics = evaluate(gt, cell);
      (speaker_level == 1 ? row.s1 : row.s3) = metrics;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

EvalConfig cell_config(const EvalConfig& base, int listener_level, int speaker_level) {
  EvalConfig cell = base;
  cell.listener_eval_level = listener_level;
  cell.speaker_eval_level = speaker_level;
  return cell;
}

}  // namespace

Table2Report run_table2(const LexiconParams& trained_l0, const EvalConfig& base) {
  Table2Report report;
  report.base = base;
  EmbeddingLexicon lexicon(trained_l0);
  const std::array<std::pair<int, int>, 4> levels{{{0, 3}, {2, 3}, {0, 1}, {2, 1}}};
  const std::array<const char*, 4> labels{"a", "b", "c", "d"};
  for (size_t i = 0; i < levels.size(); ++i) {
    CellResult cell;
    cell.label = labels[i];
    cell.listener_level = levels[i].first;
    cell.speaker_level = levels[i].second;
    cell.metrics = evaluate(lexicon, cell_config(base, levels[i].first, levels[i].second));
    report.cells[i] = std::move(cell);
  }
  report.p_s3_pair = fisher_exact(make_contingency(report.cells[0].metrics,
                                                   report.cells[1].metrics));
  report.p_s1_pair = fisher_exact(make_contingency(report.cells[2].metrics,
                                                   report.cells[3].metrics));
  return report;
}

Table3Report run_table3(const Table3Config& config) {
  Table3Report report;
  report.config = config;
  const std::array<std::pair<int, int>, 4> pairs{{{0, 1}, {0, 3}, {2, 1}, {2, 3}}};
  const std::array<const char*, 4> labels{"a", "b", "c", "d"};
  for (size_t i = 0; i < pairs.size(); ++i) {
    TrainConfig train_config = config.train_base;
    train_config.listener_level = pairs[i].first;
    train_config.speaker_level = pairs[i].second;
    TrainResult trained = train(train_config);

    EvalConfig eval_config = cell_config(config.eval_base, pairs[i].first, 1);
    CellResult cell;
    cell.label = labels[i];
    cell.listener_level = pairs[i].first;
    cell.speaker_level = pairs[i].second;  // training speaker
    cell.metrics = evaluate(EmbeddingLexicon(trained.params), eval_config);
    report.cells[i] = std::move(cell);
  }
  report.p_l0_pair = fisher_exact(make_contingency(report.cells[0].metrics,
                                                   report.cells[1].metrics));
  report.p_l2_pair = fisher_exact(make_contingency(report.cells[2].metrics,
                                                   report.cells[3].metrics));
  return report;
}

PairingsReport run_pairings(const PairingsConfig& config) {
  PairingsReport report;
  report.config = config;
  const std::array<std::pair<int, int>, 4> pairs{{{0, 1}, {0, 3}, {2, 1}, {2, 3}}};
  const std::array<const char*, 4> labels{"l0_s1", "l0_s3", "l2_s1", "l2_s3"};
  for (const auto& [n_objects, corr] : config.environments) {
    PairingsReport::Row row;
    row.n_objects = n_objects;
    row.corr = corr;
    for (size_t i = 0; i < pairs.size(); ++i) {
      TrainConfig train_config = config.train_base;
      train_config.listener_level = pairs[i].first;
      train_config.speaker_level = pairs[i].second;
      train_config.n_objects = n_objects;
      train_config.corr = corr;
      TrainResult trained = train(train_config);

      // Upgrade everyone to a level-2 listener, deploy with a level-1 speaker.
      EvalConfig eval_config = cell_config(config.eval_base, 2, 1);
      eval_config.n_objects = n_objects;
      eval_config.corr = corr;

      CellResult cell;
      cell.label = labels[i];
      cell.listener_level = pairs[i].first;
      cell.speaker_level = pairs[i].second;
      cell.metrics = evaluate(EmbeddingLexicon(trained.params), eval_config);
      row.cells[i] = std::move(cell);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

CurvesReport run_learning_curves(const CurvesConfig& config) {
  if (config.eval_every < 1) throw std::invalid_argument("eval_every must be >= 1");
  CurvesReport report;
  report.config = config;
  for (int level : {0, 2}) {
    TrainConfig train_config = config.train_base;
    train_config.listener_level = level;

    EvalConfig eval_config = config.eval_base;
    eval_config.listener_eval_level = level;

    std::vector<CurvePoint>& curve = level == 0 ? report.level0 : report.level2;
    std::vector<TrainStepRecord> records;
    TrainCallback callback;
    callback.every = config.eval_every;
    callback.fn = [&](int step, const LexiconParams& params) {
      CurvePoint point;
      point.step = step;
      point.accuracy = evaluate(EmbeddingLexicon(params), eval_config).accuracy;
      curve.push_back(point);
    };
    TrainResult result = train(train_config, callback);
    for (CurvePoint& point : curve) {
      if (point.step > 0) {
        point.loss = result.curve[static_cast<size_t>(point.step) - 1].loss;
      }
    }
  }
  return report;
}

int first_step_reaching(const std::vector<CurvePoint>& curve, double threshold) {
  for (const CurvePoint& point : curve) {
    if (point.accuracy >= threshold) return point.step;
  }
  return -1;
}

}  // namespace pragmasim
