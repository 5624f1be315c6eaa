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

#include "pragmasim/core.hpp"
#include "pragmasim/lexicon.hpp"
#include "pragmasim/mat.hpp"
#include "pragmasim/rng.hpp"

namespace pragmasim {

// Shared agent parameters. The prior weights listener inferences over object
// indices; leave it empty for a uniform prior over the context.
struct AgentSpec {
  double lambda = 1.0;     // speaker rationality (softmax inverse temperature)
  double word_cost = 0.6;  // constant cost per word
  ProbVec prior;           // empty => uniform
};

// cost(w) = word_cost * number of words.
double message_cost(const Message& message, double word_cost);

// Per-message costs in enumerate_messages order.
std::vector<double> message_costs(const std::vector<Message>& messages, double word_cost);

// --- Full-space recursion over a context x message score matrix ---------
//
// Matrices are objects x messages throughout. Listener matrices hold
// L_n(i | w): each column is a distribution over objects (a column of all
// zeros marks a message false of every object). Speaker matrices hold
// S_n(w | i): each row is a distribution over messages.
//
// The alternation is
//   L_0:   column softmax of the literal scores,
//   S_n:   row softmax of lambda * (log L_{n-1} - cost), n >= 1,
//   L_n:   column normalization of S_{n-1} * prior, n >= 1,
// with S_0 defined directly from the scores (row softmax of
// lambda * (score - cost)) so that every level is well-formed. Exact zeros
// are propagated: a message with zero listener probability for a target gets
// exactly zero speaker probability.

Mat literal_listener_matrix(const Mat& scores);
Mat literal_speaker_matrix(const Mat& scores, const std::vector<double>& costs, double lambda);
Mat speaker_from_listener(const Mat& listener, const std::vector<double>& costs, double lambda);
Mat listener_from_speaker(const Mat& speaker, const std::vector<double>& prior);

Mat listener_matrix(int level, const Mat& scores, const std::vector<double>& costs,
                    const AgentSpec& spec);
Mat speaker_matrix(int level, const Mat& scores, const std::vector<double>& costs,
                   const AgentSpec& spec);

// Expands spec.prior to `n` entries (uniform when empty).
std::vector<double> expand_prior(const AgentSpec& spec, int n);

// --- Single-query agents -------------------------------------------------

// Distribution over object indices given a message. Throws
// AllZeroSupportError when the message has zero probability on every object
// (only possible with indicator-style lexicons).
ProbVec listener(int level, const Lexicon& lexicon, const GameContext& context,
                 const Message& message, const AgentSpec& spec, const Vocabulary& vocab);

// Distribution over enumerate_messages(vocab) for a target index.
ProbVec speaker(int level, const Lexicon& lexicon, const GameContext& context, int target,
                const AgentSpec& spec, const Vocabulary& vocab);

enum class SelectionMode { kSample, kGreedy };

SelectionMode selection_mode_from_string(const std::string& name);
std::string to_string(SelectionMode mode);

// Greedy picks the lowest-index argmax; sampling draws from the distribution
// (rng required).
Message select_message(const ProbVec& dist, const std::vector<Message>& messages,
                       SelectionMode mode, SeededRng* rng);

}  // namespace pragmasim
