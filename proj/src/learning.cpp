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

#include "pragmasim/learning.hpp"

#include <cmath>
#include <stdexcept>

namespace pragmasim {

namespace {

struct ListenerForward {
  Mat scores;                  // literal scores D
  std::vector<Mat> listeners;  // L_0, L_2, ..., L_level (in that order)
  std::vector<Mat> speakers;   // S_1, S_3, ..., S_{level-1}
};

ListenerForward forward_listener(const LexiconParams& params, const GameContext& game,
                                 int listener_level, const AgentSpec& spec,
                                 const std::vector<Message>& messages,
                                 const std::vector<double>& costs,
                                 const std::vector<double>& prior) {
  if (listener_level < 0 || listener_level % 2 != 0) {
    throw std::invalid_argument("training differentiates even listener levels only");
  }
  ListenerForward fwd;
  EmbeddingLexicon lexicon(params);
  fwd.scores = score_matrix(lexicon, game, messages);
  fwd.listeners.push_back(literal_listener_matrix(fwd.scores));
  for (int level = 2; level <= listener_level; level += 2) {
    fwd.speakers.push_back(speaker_from_listener(fwd.listeners.back(), costs, spec.lambda));
    fwd.listeners.push_back(listener_from_speaker(fwd.speakers.back(), prior));
  }
  return fwd;
}

double loss_from_forward(const ListenerForward& fwd, const GameContext& game, int w) {
  double p = fwd.listeners.back()(game.target, w);
  return -std::log(std::max(p, kProbClamp));
}

// VJP of a column normalization out(i,w) = u(i,w) / sum_i u(i,w) where
// u(i,w) = speaker(i,w) * prior_i. Writes the adjoint of `speaker`.
Mat backprop_listener_normalization(const Mat& listener_out, const Mat& listener_bar,
                                    const Mat& speaker_in, const std::vector<double>& prior) {
  Mat speaker_bar(speaker_in.rows, speaker_in.cols);
  for (int w = 0; w < speaker_in.cols; ++w) {
    double norm = 0.0;
    for (int i = 0; i < speaker_in.rows; ++i) {
      norm += speaker_in(i, w) * prior[static_cast<size_t>(i)];
    }
    if (norm == 0.0) continue;
    double dot = 0.0;
    for (int i = 0; i < speaker_in.rows; ++i) dot += listener_bar(i, w) * listener_out(i, w);
    for (int i = 0; i < speaker_in.rows; ++i) {
      speaker_bar(i, w) = (listener_bar(i, w) - dot) / norm * prior[static_cast<size_t>(i)];
    }
  }
  return speaker_bar;
}

// VJP of a speaker row softmax over z(i,w) = lambda*(log L(i,w) - cost_w).
// Writes the adjoint of the lower listener matrix L. Entries with L == 0 are
// structural zeros of the softmax and receive no gradient.
Mat backprop_speaker_softmax(const Mat& speaker_out, const Mat& speaker_bar,
                             const Mat& listener_in, double lambda) {
  Mat listener_bar(listener_in.rows, listener_in.cols);
  for (int i = 0; i < speaker_out.rows; ++i) {
    double dot = 0.0;
    for (int w = 0; w < speaker_out.cols; ++w) dot += speaker_bar(i, w) * speaker_out(i, w);
    for (int w = 0; w < speaker_out.cols; ++w) {
      double z_bar = speaker_out(i, w) * (speaker_bar(i, w) - dot);
      if (listener_in(i, w) > 0.0) {
        listener_bar(i, w) = lambda * z_bar / listener_in(i, w);
      }
    }
  }
  return listener_bar;
}

// VJP of the literal listener's column softmax, producing the adjoint of the
// score matrix.
Mat backprop_literal_softmax(const Mat& l0, const Mat& l0_bar) {
  Mat scores_bar(l0.rows, l0.cols);
  for (int w = 0; w < l0.cols; ++w) {
    double dot = 0.0;
    for (int i = 0; i < l0.rows; ++i) dot += l0_bar(i, w) * l0(i, w);
    for (int i = 0; i < l0.rows; ++i) scores_bar(i, w) = l0(i, w) * (l0_bar(i, w) - dot);
  }
  return scores_bar;
}

// Accumulates d loss / d embeddings from the score-matrix adjoint. The score
// is dot(obj_emb, msg_emb) with obj_emb = cf[color] + sf[shape] and msg_emb
// the sum of the present word embeddings.
void accumulate_embedding_grads(const LexiconParams& params, const GameContext& game,
                                const std::vector<Message>& messages, const Mat& scores_bar,
                                LexiconGrads& grads) {
  const int dim = params.dim;
  for (int i = 0; i < scores_bar.rows; ++i) {
    const ObjectFeatures& object = game.objects[static_cast<size_t>(i)];
    std::span<const double> cf = params.color_feature(object.color);
    std::span<const double> sf = params.shape_feature(object.shape);
    double* cf_bar = grads.color_feature_emb.data() + static_cast<size_t>(object.color) * dim;
    double* sf_bar = grads.shape_feature_emb.data() + static_cast<size_t>(object.shape) * dim;
    for (int w = 0; w < scores_bar.cols; ++w) {
      const double g = scores_bar(i, w);
      if (g == 0.0) continue;
      const Message& message = messages[static_cast<size_t>(w)];
      if (message.color_word) {
        std::span<const double> cw = params.color_word(*message.color_word);
        double* cw_bar =
            grads.color_word_emb.data() + static_cast<size_t>(*message.color_word) * dim;
        for (int k = 0; k < dim; ++k) {
          cf_bar[k] += g * cw[k];
          sf_bar[k] += g * cw[k];
          cw_bar[k] += g * (cf[k] + sf[k]);
        }
      }
      if (message.shape_word) {
        std::span<const double> sw = params.shape_word(*message.shape_word);
        double* sw_bar =
            grads.shape_word_emb.data() + static_cast<size_t>(*message.shape_word) * dim;
        for (int k = 0; k < dim; ++k) {
          cf_bar[k] += g * sw[k];
          sf_bar[k] += g * sw[k];
          sw_bar[k] += g * (cf[k] + sf[k]);
        }
      }
    }
  }
}

}  // namespace

double nll_loss(const LexiconParams& params, const GameContext& game, const Message& message,
                int listener_level, const AgentSpec& spec, const Vocabulary& vocab) {
  const std::vector<Message> messages = enumerate_messages(vocab);
  const ListenerForward fwd =
      forward_listener(params, game, listener_level, spec, messages,
                       message_costs(messages, spec.word_cost), expand_prior(spec, game.size()));
  return loss_from_forward(fwd, game, message_index(message, vocab));
}

LexiconGrads backward(const LexiconParams& params, const GameContext& game,
                      const Message& message, int listener_level, const AgentSpec& spec,
                      const Vocabulary& vocab, double* loss_out) {
  const std::vector<Message> messages = enumerate_messages(vocab);
  const std::vector<double> costs = message_costs(messages, spec.word_cost);
  const std::vector<double> prior = expand_prior(spec, game.size());
  const ListenerForward fwd =
      forward_listener(params, game, listener_level, spec, messages, costs, prior);
  const int w_observed = message_index(message, vocab);
  if (loss_out) *loss_out = loss_from_forward(fwd, game, w_observed);

  // Seed: d(-log max(p, clamp))/dp; zero in the clamped region.
  const Mat& top = fwd.listeners.back();
  Mat listener_bar(top.rows, top.cols);
  const double p = top(game.target, w_observed);
  if (p >= kProbClamp) listener_bar(game.target, w_observed) = -1.0 / p;

  for (int k = static_cast<int>(fwd.speakers.size()); k-- > 0;) {
    Mat speaker_bar = backprop_listener_normalization(fwd.listeners[static_cast<size_t>(k) + 1],
                                                      listener_bar,
                                                      fwd.speakers[static_cast<size_t>(k)], prior);
    listener_bar = backprop_speaker_softmax(fwd.speakers[static_cast<size_t>(k)], speaker_bar,
                                            fwd.listeners[static_cast<size_t>(k)], spec.lambda);
  }
  const Mat scores_bar = backprop_literal_softmax(fwd.listeners.front(), listener_bar);

  LexiconGrads grads = LexiconParams::zeros_like(params);
  accumulate_embedding_grads(params, game, messages, scores_bar, grads);
  return grads;
}

OptimizerState OptimizerState::init(const LexiconParams& params, const AdamWConfig& hyper) {
  OptimizerState state;
  state.hyper = hyper;
  state.first_moment = LexiconParams::zeros_like(params);
  state.second_moment = LexiconParams::zeros_like(params);
  state.step = 0;
  return state;
}

void adamw_step(LexiconParams& params, const LexiconGrads& grads, OptimizerState& state) {
  if (!params.same_shape(grads) || !params.same_shape(state.first_moment) ||
      !params.same_shape(state.second_moment)) {
    throw std::invalid_argument("adamw_step: parameter/gradient/state shapes differ");
  }
  const AdamWConfig& h = state.hyper;
  ++state.step;
  const double bias1 = 1.0 - std::pow(h.beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(h.beta2, static_cast<double>(state.step));

  auto theta = params.fields();
  auto grad = grads.fields();
  auto m = state.first_moment.fields();
  auto v = state.second_moment.fields();
  for (size_t f = 0; f < theta.size(); ++f) {
    std::vector<double>& t = *theta[f];
    const std::vector<double>& g = *grad[f];
    std::vector<double>& m1 = *m[f];
    std::vector<double>& m2 = *v[f];
    for (size_t j = 0; j < t.size(); ++j) {
      m1[j] = h.beta1 * m1[j] + (1.0 - h.beta1) * g[j];
      m2[j] = h.beta2 * m2[j] + (1.0 - h.beta2) * g[j] * g[j];
      const double m_hat = m1[j] / bias1;
      const double v_hat = m2[j] / bias2;
      t[j] -= h.lr * (m_hat / (std::sqrt(v_hat) + h.epsilon) + h.weight_decay * t[j]);
    }
  }
}

TrainConfig desk_train_config() { return TrainConfig{}; }

TrainConfig paper_train_config() {
  TrainConfig config;
  config.steps = 25920;
  config.batch_size = 32;
  config.optimizer.lr = 1e-5;
  return config;
}

TrainResult train(const TrainConfig& config, SeededRng& rng, const TrainCallback& callback) {
  if (config.steps < 0 || config.batch_size < 1) {
    throw std::invalid_argument("train needs steps >= 0 and batch_size >= 1");
  }
  const Vocabulary& vocab = Vocabulary::standard();
  const std::vector<Message> messages = enumerate_messages(vocab);
  const AgentSpec spec{1.0, config.word_cost, {}};
  const std::vector<double> costs = message_costs(messages, config.word_cost);

  TrainResult result;
  result.generator = sample_generator_params(
      ConcentrationConfig{config.corr, 1.0, 5.0}, rng);
  result.params = init_params(vocab, config.dim, config.init_scale, rng);

  GroundTruthLexicon teacher_lexicon(vocab);
  OptimizerState state = OptimizerState::init(result.params, config.optimizer);
  result.curve.reserve(static_cast<size_t>(config.steps));

  if (callback.fn) callback.fn(0, result.params);

  for (int step = 0; step < config.steps; ++step) {
    LexiconGrads batch_grads = LexiconParams::zeros_like(result.params);
    double batch_loss = 0.0;
    for (int b = 0; b < config.batch_size; ++b) {
      GameContext game = sample_game(result.generator, config.n_objects, rng);
      ProbVec dist =
          speaker(config.speaker_level, teacher_lexicon, game, game.target, spec, vocab);
      Message msg = select_message(dist, messages, config.selection, &rng);
      double loss = 0.0;
      LexiconGrads grads =
          backward(result.params, game, msg, config.listener_level, spec, vocab, &loss);
      batch_loss += loss;
      auto acc = batch_grads.fields();
      auto add = grads.fields();
      for (size_t f = 0; f < acc.size(); ++f) {
        for (size_t j = 0; j < acc[f]->size(); ++j) (*acc[f])[j] += (*add[f])[j];
      }
    }
    const double scale = 1.0 / config.batch_size;
    double norm_sq = 0.0;
    for (auto* field : batch_grads.fields()) {
      for (double& g : *field) {
        g *= scale;
        norm_sq += g * g;
      }
    }
    adamw_step(result.params, batch_grads, state);
    result.curve.push_back(
        TrainStepRecord{step + 1, batch_loss / config.batch_size, std::sqrt(norm_sq)});
    if (callback.fn && callback.every > 0 &&
        ((step + 1) % callback.every == 0 || step + 1 == config.steps)) {
      callback.fn(step + 1, result.params);
    }
  }
  return result;
}

TrainResult train(const TrainConfig& config, const TrainCallback& callback) {
  SeededRng rng(config.seed);
  return train(config, rng, callback);
}

}  // namespace pragmasim
