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

#include "pragmasim/rsa.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pragmasim {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double message_cost(const Message& message, double word_cost) {
  if (!(word_cost >= 0.0)) throw std::invalid_argument("word_cost must be nonnegative");
  return word_cost * message.length();
}

std::vector<double> message_costs(const std::vector<Message>& messages, double word_cost) {
  std::vector<double> costs;
  costs.reserve(messages.size());
  for (const Message& m : messages) costs.push_back(message_cost(m, word_cost));
  return costs;
}

std::vector<double> expand_prior(const AgentSpec& spec, int n) {
  if (spec.prior.size() == 0) return ProbVec::uniform(n).values();
  if (spec.prior.size() != n) {
    throw std::invalid_argument("listener prior size does not match the context");
  }
  return spec.prior.values();
}

Mat literal_listener_matrix(const Mat& scores) {
  Mat out(scores.rows, scores.cols);
  for (int w = 0; w < scores.cols; ++w) {
    double max_score = kNegInf;
    for (int i = 0; i < scores.rows; ++i) max_score = std::max(max_score, scores(i, w));
    if (max_score == kNegInf) continue;  // message false everywhere: zero column
    double norm = 0.0;
    for (int i = 0; i < scores.rows; ++i) {
      double e = scores(i, w) == kNegInf ? 0.0 : std::exp(scores(i, w) - max_score);
      out(i, w) = e;
      norm += e;
    }
    for (int i = 0; i < scores.rows; ++i) out(i, w) /= norm;
  }
  return out;
}

namespace {

// Row softmax of lambda * (logit - cost) where a logit of -inf is an exact
// structural zero (the message cannot refer to the row's target).
Mat row_speaker_softmax(const Mat& logits, const std::vector<double>& costs, double lambda) {
  Mat out(logits.rows, logits.cols);
  for (int i = 0; i < logits.rows; ++i) {
    double max_z = kNegInf;
    for (int w = 0; w < logits.cols; ++w) {
      if (logits(i, w) == kNegInf) continue;
      max_z = std::max(max_z, lambda * (logits(i, w) - costs[static_cast<size_t>(w)]));
    }
    if (max_z == kNegInf) {
      throw AllZeroSupportError();  // no utterance can refer to this target
    }
    double norm = 0.0;
    for (int w = 0; w < logits.cols; ++w) {
      double e = 0.0;
      if (logits(i, w) != kNegInf) {
        e = std::exp(lambda * (logits(i, w) - costs[static_cast<size_t>(w)]) - max_z);
      }
      out(i, w) = e;
      norm += e;
    }
    for (int w = 0; w < logits.cols; ++w) out(i, w) /= norm;
  }
  return out;
}

}  // namespace

Mat literal_speaker_matrix(const Mat& scores, const std::vector<double>& costs, double lambda) {
  return row_speaker_softmax(scores, costs, lambda);
}

Mat speaker_from_listener(const Mat& listener, const std::vector<double>& costs, double lambda) {
  Mat logits(listener.rows, listener.cols);
  for (int i = 0; i < listener.rows; ++i) {
    for (int w = 0; w < listener.cols; ++w) {
      logits(i, w) = listener(i, w) > 0.0 ? std::log(listener(i, w)) : kNegInf;
    }
  }
  return row_speaker_softmax(logits, costs, lambda);
}

Mat listener_from_speaker(const Mat& speaker, const std::vector<double>& prior) {
  Mat out(speaker.rows, speaker.cols);
  for (int w = 0; w < speaker.cols; ++w) {
    double norm = 0.0;
    for (int i = 0; i < speaker.rows; ++i) {
      double u = speaker(i, w) * prior[static_cast<size_t>(i)];
      out(i, w) = u;
      norm += u;
    }
    if (norm == 0.0) continue;  // zero column stays zero
    for (int i = 0; i < speaker.rows; ++i) out(i, w) /= norm;
  }
  return out;
}

Mat listener_matrix(int level, const Mat& scores, const std::vector<double>& costs,
                    const AgentSpec& spec) {
  if (level < 0) throw std::invalid_argument("listener level must be >= 0");
  if (level == 0) return literal_listener_matrix(scores);
  return listener_from_speaker(speaker_matrix(level - 1, scores, costs, spec),
                               expand_prior(spec, scores.rows));
}

Mat speaker_matrix(int level, const Mat& scores, const std::vector<double>& costs,
                   const AgentSpec& spec) {
  if (level < 0) throw std::invalid_argument("speaker level must be >= 0");
  if (level == 0) return literal_speaker_matrix(scores, costs, spec.lambda);
  return speaker_from_listener(listener_matrix(level - 1, scores, costs, spec), costs,
                               spec.lambda);
}

ProbVec listener(int level, const Lexicon& lexicon, const GameContext& context,
                 const Message& message, const AgentSpec& spec, const Vocabulary& vocab) {
  const std::vector<Message> messages = enumerate_messages(vocab);
  const int w = message_index(message, vocab);
  const Mat scores = score_matrix(lexicon, context, messages);
  const Mat L = listener_matrix(level, scores, message_costs(messages, spec.word_cost), spec);
  std::vector<double> column(static_cast<size_t>(L.rows));
  double sum = 0.0;
  for (int i = 0; i < L.rows; ++i) {
    column[static_cast<size_t>(i)] = L(i, w);
    sum += L(i, w);
  }
  if (sum == 0.0) throw AllZeroSupportError();
  return ProbVec::from_weights(std::move(column));
}

ProbVec speaker(int level, const Lexicon& lexicon, const GameContext& context, int target,
                const AgentSpec& spec, const Vocabulary& vocab) {
  if (target < 0 || target >= context.size()) {
    throw std::invalid_argument("speaker target index out of range");
  }
  const std::vector<Message> messages = enumerate_messages(vocab);
  const Mat scores = score_matrix(lexicon, context, messages);
  const Mat S = speaker_matrix(level, scores, message_costs(messages, spec.word_cost), spec);
  std::vector<double> row(static_cast<size_t>(S.cols));
  for (int w = 0; w < S.cols; ++w) row[static_cast<size_t>(w)] = S(target, w);
  return ProbVec::from_weights(std::move(row));
}

SelectionMode selection_mode_from_string(const std::string& name) {
  if (name == "sample") return SelectionMode::kSample;
  if (name == "greedy") return SelectionMode::kGreedy;
  throw std::invalid_argument("selection mode must be 'sample' or 'greedy', got '" + name + "'");
}

std::string to_string(SelectionMode mode) {
  return mode == SelectionMode::kSample ? "sample" : "greedy";
}

Message select_message(const ProbVec& dist, const std::vector<Message>& messages,
                       SelectionMode mode, SeededRng* rng) {
  if (static_cast<size_t>(dist.size()) != messages.size()) {
    throw std::invalid_argument("distribution and message list sizes differ");
  }
  if (mode == SelectionMode::kGreedy) return messages[static_cast<size_t>(dist.argmax())];
  if (rng == nullptr) throw std::invalid_argument("sampling selection needs an rng");
  return messages[static_cast<size_t>(rng->categorical(dist.values()))];
}

}  // namespace pragmasim
