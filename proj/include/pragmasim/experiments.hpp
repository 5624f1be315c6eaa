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

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pragmasim/learning.hpp"
#include "pragmasim/lexicon.hpp"
#include "pragmasim/rsa.hpp"

namespace pragmasim {

// Knowledgeable speakers emit their argmax message by default; the
// speaker-level contrasts the reports measure (verbose low-level speakers
// vs concise high-level ones) are properties of that policy. Sampled
// emission remains available via `selection`.
struct EvalConfig {
  int listener_eval_level = 0;  // 0 or 2
  int speaker_eval_level = 1;   // 1 or 3
  int corr = 1;
  int n_objects = 5;
  double word_cost = 0.6;
  int constellations = 10;
  int games_per_constellation = 1000;  // paper scale: 3200
  SelectionMode selection = SelectionMode::kGreedy;
  uint64_t seed = 7;
};

EvalConfig desk_eval_config();
EvalConfig paper_eval_config();

struct Metrics {
  double accuracy = 0.0;
  long correct_count = 0;
  long total_count = 0;
  double avg_message_length = 0.0;
  std::vector<double> per_constellation_accuracy;
};

// Plays every game of a freshly sampled seeded suite: the knowledgeable
// speaker at speaker_eval_level emits one message (per the selection mode);
// the listener at listener_eval_level reasons over `lexicon` and answers by
// argmax (lowest index on ties). Deterministic given the config.
Metrics evaluate(const Lexicon& lexicon, const EvalConfig& config);

// 2x2 counts: rows correct/incorrect, columns condition A/B.
struct ContingencyTable {
  long correct_a = 0;
  long correct_b = 0;
  long incorrect_a = 0;
  long incorrect_b = 0;
};

ContingencyTable make_contingency(const Metrics& a, const Metrics& b);

// Two-sided Fisher's exact test: the sum of hypergeometric probabilities of
// all tables with the observed margins whose probability does not exceed the
// observed table's (with 1e-7 relative slack). Degenerate margins give 1.
double fisher_exact(const ContingencyTable& table);

// Significance marker matching the reports: "**" for p < 0.01, "*" for
// p < 0.05, "" otherwise.
std::string significance_stars(double p_value);

// --- Report runners -------------------------------------------------------

struct CellResult {
  std::string label;
  int listener_level = 0;
  int speaker_level = 0;
  Metrics metrics;
};

// Average message length of knowledgeable speakers per distractor count.
// Greedy emission is the default here: the documented length orderings
// (higher-level speakers shorter, more distractors longer) are properties of
// the argmax policy, and sampling provably washes them out.
struct Table1Config {
  std::vector<int> distractor_counts = {2, 3, 4};
  int corr = 1;
  double word_cost = 0.6;
  int constellations = 10;
  int games_per_constellation = 1000;
  SelectionMode selection = SelectionMode::kGreedy;
  uint64_t seed = 7;
};

struct Table1Report {
  Table1Config config;
  struct Row {
    int distractors = 0;
    Metrics s1;
    Metrics s3;
  };
  std::vector<Row> rows;
};

Table1Report run_table1(const Table1Config& config);

// Evaluation-time level pairings for one pretrained lexicon: cells
// a=(L0,S3), b=(L2,S3), c=(L0,S1), d=(L2,S1), with paired significance tests
// on (a,b) and (c,d).
struct Table2Report {
  EvalConfig base;
  std::array<CellResult, 4> cells;
  double p_s3_pair = 1.0;
  double p_s1_pair = 1.0;
};

Table2Report run_table2(const LexiconParams& trained_l0, const EvalConfig& base);

// Training-time speaker-level effects: trains four listeners (levels 0 and 2,
// each from speaker levels 1 and 3) and evaluates each at its own level with
// a level-1 speaker. Cells: a=(L0,S1-trained), b=(L0,S3-trained),
// c=(L2,S1-trained), d=(L2,S3-trained).
struct Table3Config {
  TrainConfig train_base;  // levels overridden per cell
  EvalConfig eval_base;    // speaker_eval_level forced to 1
};

struct Table3Report {
  Table3Config config;
  std::array<CellResult, 4> cells;
  double p_l0_pair = 1.0;
  double p_l2_pair = 1.0;
};

Table3Report run_table3(const Table3Config& config);

// All four (listener level x training speaker level) pairs trained per
// environment, then upgraded to level 2 and evaluated with a level-1 speaker
// in that environment.
struct PairingsConfig {
  // (n_objects, corr) in increasing difficulty.
  std::vector<std::pair<int, int>> environments = {{3, 0}, {3, 1}, {4, 0},
                                                   {4, 1}, {5, 0}, {5, 1}};
  TrainConfig train_base;
  EvalConfig eval_base;
};

struct PairingsReport {
  PairingsConfig config;
  struct Row {
    int n_objects = 0;
    int corr = 0;
    // Order: L0*S1, L0*S3, L2*S1, L2*S3 (training pairs).
    std::array<CellResult, 4> cells;
  };
  std::vector<Row> rows;
};

PairingsReport run_pairings(const PairingsConfig& config);

// Two training runs identical except for the listener level, with held-out
// accuracy recorded every eval_every steps.
struct CurvesConfig {
  TrainConfig train_base;  // listener_level overridden with 0 and 2
  EvalConfig eval_base;    // held-out suite; levels follow each learner
  int eval_every = 100;
};

struct CurvePoint {
  int step = 0;
  double loss = 0.0;  // mean train loss at that step (0 for step 0)
  double accuracy = 0.0;
};

struct CurvesReport {
  CurvesConfig config;
  std::vector<CurvePoint> level0;
  std::vector<CurvePoint> level2;
};

CurvesReport run_learning_curves(const CurvesConfig& config);

// First recorded step with accuracy >= threshold, or -1 if never reached.
int first_step_reaching(const std::vector<CurvePoint>& curve, double threshold);

}  // namespace pragmasim
