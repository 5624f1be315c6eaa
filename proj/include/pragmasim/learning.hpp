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

#include <cstdint>
#include <functional>
#include <vector>

#include "pragmasim/core.hpp"
#include "pragmasim/lexicon.hpp"
#include "pragmasim/rsa.hpp"
#include "pragmasim/worldgen.hpp"

namespace pragmasim {

// Listener probabilities are clamped below at this value before the log in
// the training loss. Messages produced by knowledgeable speakers are always
// true of the target, so a smaller value can only mean numerical underflow.
inline constexpr double kProbClamp = 1e-12;

// Gradients share the parameter layout.
using LexiconGrads = LexiconParams;

// Negative log-likelihood of the target index under the listener at `level`
// (an even reasoning depth) built on the learned lexicon.
double nll_loss(const LexiconParams& params, const GameContext& game, const Message& message,
                int listener_level, const AgentSpec& spec, const Vocabulary& vocab);

// Exact reverse-mode gradient of nll_loss with respect to every embedding
// entry, propagated through the chained softmaxes of the reasoning recursion
// (for level 2: literal listener -> speaker -> pragmatic listener). The
// optional out-parameter receives the forward loss.
LexiconGrads backward(const LexiconParams& params, const GameContext& game,
                      const Message& message, int listener_level, const AgentSpec& spec,
                      const Vocabulary& vocab, double* loss_out = nullptr);

struct AdamWConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.01;
};

// Decoupled-weight-decay adaptive moment state. Accumulators mirror the
// parameter layout.
struct OptimizerState {
  AdamWConfig hyper;
  LexiconParams first_moment;
  LexiconParams second_moment;
  long step = 0;

  static OptimizerState init(const LexiconParams& params, const AdamWConfig& hyper);
};

// One AdamW update in place. Throws std::invalid_argument on shape mismatch.
void adamw_step(LexiconParams& params, const LexiconGrads& grads, OptimizerState& state);

struct TrainStepRecord {
  int step = 0;        // 1-based count of completed updates
  double loss = 0.0;   // mean batch loss
  double grad_norm = 0.0;
};

struct TrainConfig {
  int speaker_level = 1;    // ground-truth teacher depth (1 or 3 in experiments)
  int listener_level = 0;   // learner depth (0 or 2)
  int corr = 0;
  int n_objects = 3;
  double word_cost = 0.6;
  int steps = 2000;
  int batch_size = 32;
  int dim = 16;
  double init_scale = 0.1;
  SelectionMode selection = SelectionMode::kGreedy;  // teachers emit their argmax
  AdamWConfig optimizer;
  uint64_t seed = 7;
};

// Named presets. "desk" runs in seconds on a laptop; "paper" keeps the
// full-scale schedule (25920 steps, batch 32, lr 1e-5).
TrainConfig desk_train_config();
TrainConfig paper_train_config();

struct TrainResult {
  LexiconParams params;
  std::vector<TrainStepRecord> curve;
  GeneratorParams generator;  // the single training constellation
};

// Optional observer: fn(completed_steps, params) is called at step 0, every
// `every` completed updates, and after the final update.
struct TrainCallback {
  int every = 0;
  std::function<void(int, const LexiconParams&)> fn;
};

// Streams fresh games from one sampled generator constellation; for each
// game the knowledgeable speaker of the configured level emits a message,
// the listener's own level is differentiated, and one AdamW step is applied
// to the mean batch gradient. Deterministic given (config, rng seed).
TrainResult train(const TrainConfig& config, SeededRng& rng, const TrainCallback& callback = {});

// Convenience: seeds the stream from config.seed.
TrainResult train(const TrainConfig& config, const TrainCallback& callback = {});

}  // namespace pragmasim
