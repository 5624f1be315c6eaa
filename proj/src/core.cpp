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

#include "pragmasim/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace pragmasim {

Vocabulary::Vocabulary(std::vector<std::string> color_words, std::vector<std::string> shape_words)
    : color_words_(std::move(color_words)), shape_words_(std::move(shape_words)) {
  if (color_words_.empty() || shape_words_.empty()) {
    throw std::invalid_argument("vocabulary needs at least one color word and one shape word");
  }
  std::set<std::string> seen;
  for (const auto* list : {&color_words_, &shape_words_}) {
    for (const auto& word : *list) {
      if (word.empty() || !seen.insert(word).second) {
        throw std::invalid_argument("vocabulary words must be nonempty and unique: '" + word + "'");
      }
    }
  }
}

const Vocabulary& Vocabulary::standard() {
  static const Vocabulary vocab({"red", "green", "blue", "yellow", "magenta", "cyan"},
                                {"circle", "square", "triangle", "pentagon", "cross"});
  return vocab;
}

std::optional<int> Vocabulary::find_color_word(const std::string& word) const {
  auto it = std::find(color_words_.begin(), color_words_.end(), word);
  if (it == color_words_.end()) return std::nullopt;
  return static_cast<int>(it - color_words_.begin());
}

std::optional<int> Vocabulary::find_shape_word(const std::string& word) const {
  auto it = std::find(shape_words_.begin(), shape_words_.end(), word);
  if (it == shape_words_.end()) return std::nullopt;
  return static_cast<int>(it - shape_words_.begin());
}

Message make_message(const Vocabulary& vocab, const std::optional<std::string>& color_word,
                     const std::optional<std::string>& shape_word) {
  if (!color_word && !shape_word) throw EmptyMessageError();
  Message message;
  if (color_word) {
    auto idx = vocab.find_color_word(*color_word);
    if (!idx) throw UnknownWordError(*color_word);
    message.color_word = idx;
  }
  if (shape_word) {
    auto idx = vocab.find_shape_word(*shape_word);
    if (!idx) throw UnknownWordError(*shape_word);
    message.shape_word = idx;
  }
  return message;
}

Message message_from_indices(const Vocabulary& vocab, std::optional<int> color_word,
                             std::optional<int> shape_word) {
  if (!color_word && !shape_word) throw EmptyMessageError();
  if (color_word && (*color_word < 0 || *color_word >= vocab.num_colors())) {
    throw UnknownWordError("color#" + std::to_string(*color_word));
  }
  if (shape_word && (*shape_word < 0 || *shape_word >= vocab.num_shapes())) {
    throw UnknownWordError("shape#" + std::to_string(*shape_word));
  }
  return Message{color_word, shape_word};
}

std::vector<Message> enumerate_messages(const Vocabulary& vocab) {
  std::vector<Message> out;
  const int colors = vocab.num_colors();
  const int shapes = vocab.num_shapes();
  out.reserve(static_cast<size_t>(shapes + colors + colors * shapes));
  for (int s = 0; s < shapes; ++s) out.push_back(Message{std::nullopt, s});
  for (int c = 0; c < colors; ++c) {
    out.push_back(Message{c, std::nullopt});
    for (int s = 0; s < shapes; ++s) out.push_back(Message{c, s});
  }
  return out;
}

int message_index(const Message& message, const Vocabulary& vocab) {
  const int shapes = vocab.num_shapes();
  if (!message.color_word) {
    if (!message.shape_word) throw EmptyMessageError();
    return *message.shape_word;
  }
  int base = shapes + *message.color_word * (1 + shapes);
  return message.shape_word ? base + 1 + *message.shape_word : base;
}

std::string to_string(const Message& message, const Vocabulary& vocab) {
  std::string out;
  if (message.color_word) out += vocab.color_word(*message.color_word);
  if (message.shape_word) {
    if (!out.empty()) out += ' ';
    out += vocab.shape_word(*message.shape_word);
  }
  if (out.empty()) throw EmptyMessageError();
  return out;
}

Message parse_message(const std::string& text, const Vocabulary& vocab) {
  std::istringstream in(text);
  Message message;
  std::string word;
  int words = 0;
  while (in >> word) {
    if (++words > 2) throw std::invalid_argument("message has more than two words: '" + text + "'");
    if (auto c = vocab.find_color_word(word)) {
      if (message.color_word) throw std::invalid_argument("duplicate color word in '" + text + "'");
      message.color_word = c;
    } else if (auto s = vocab.find_shape_word(word)) {
      if (message.shape_word) throw std::invalid_argument("duplicate shape word in '" + text + "'");
      message.shape_word = s;
    } else {
      throw UnknownWordError(word);
    }
  }
  if (words == 0) throw EmptyMessageError();
  return message;
}

void validate_context(const GameContext& context, const Vocabulary& vocab) {
  if (context.size() < 2) throw std::invalid_argument("context needs at least two objects");
  if (context.target < 0 || context.target >= context.size()) {
    throw std::invalid_argument("target index out of range");
  }
  for (const auto& object : context.objects) {
    if (!vocab.contains(object)) throw std::invalid_argument("object features out of range");
  }
  const ObjectFeatures& target = context.target_object();
  for (int i = 0; i < context.size(); ++i) {
    if (i != context.target && context.objects[i] == target) {
      throw std::invalid_argument("distractor duplicates the target's features");
    }
  }
}

ProbVec ProbVec::uniform(int n) {
  if (n <= 0) throw std::invalid_argument("uniform ProbVec needs n >= 1");
  return ProbVec(std::vector<double>(static_cast<size_t>(n), 1.0 / n));
}

ProbVec ProbVec::from_weights(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative and finite");
    sum += w;
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw std::invalid_argument("weights must have a positive finite sum");
  }
  for (double& w : weights) w /= sum;
  return ProbVec(std::move(weights));
}

ProbVec ProbVec::from_probabilities(std::vector<double> probs, double tol) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("probabilities must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("probabilities must sum to 1");
  return ProbVec(std::move(probs));
}

int ProbVec::argmax() const {
  if (values_.empty()) throw std::logic_error("argmax of empty ProbVec");
  return static_cast<int>(std::max_element(values_.begin(), values_.end()) - values_.begin());
}

}  // namespace pragmasim
