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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pragmasim {

// Domain errors shared across modules.
struct EmptyMessageError : std::invalid_argument {
  EmptyMessageError() : std::invalid_argument("message must contain at least one word") {}
};

struct UnknownWordError : std::invalid_argument {
  explicit UnknownWordError(const std::string& word)
      : std::invalid_argument("unknown word: " + word) {}
};

struct AllZeroSupportError : std::runtime_error {
  AllZeroSupportError()
      : std::runtime_error("message is false of every object in the context") {}
};

struct RejectionOverflowError : std::runtime_error {
  explicit RejectionOverflowError(const std::string& what) : std::runtime_error(what) {}
};

// A scene object: a symbolic (color, shape) feature pair. Indices refer to a
// Vocabulary's feature inventory.
struct ObjectFeatures {
  int color = 0;
  int shape = 0;

  friend bool operator==(const ObjectFeatures&, const ObjectFeatures&) = default;
};

// Word inventory. Color word i names color feature i; likewise for shapes.
// Word identifiers are lowercase strings and must be unique across both lists.
class Vocabulary {
 public:
  Vocabulary(std::vector<std::string> color_words, std::vector<std::string> shape_words);

  // The default world: 6 colors, 5 shapes.
  static const Vocabulary& standard();

  int num_colors() const { return static_cast<int>(color_words_.size()); }
  int num_shapes() const { return static_cast<int>(shape_words_.size()); }
  const std::string& color_word(int i) const { return color_words_.at(i); }
  const std::string& shape_word(int i) const { return shape_words_.at(i); }
  std::optional<int> find_color_word(const std::string& word) const;
  std::optional<int> find_shape_word(const std::string& word) const;
  bool contains(const ObjectFeatures& object) const {
    return object.color >= 0 && object.color < num_colors() && object.shape >= 0 &&
           object.shape < num_shapes();
  }

 private:
  std::vector<std::string> color_words_;
  std::vector<std::string> shape_words_;
};

// A one- or two-word utterance. Slots hold word indices into a Vocabulary.
// The canonical surface order is color word before shape word.
struct Message {
  std::optional<int> color_word;
  std::optional<int> shape_word;

  int length() const { return (color_word ? 1 : 0) + (shape_word ? 1 : 0); }

  friend bool operator==(const Message&, const Message&) = default;
};

// Builds a canonical Message from word strings, validating against the
// vocabulary. Throws EmptyMessageError / UnknownWordError.
Message make_message(const Vocabulary& vocab, const std::optional<std::string>& color_word,
                     const std::optional<std::string>& shape_word);

// Index-based variant; indices must lie within the vocabulary.
Message message_from_indices(const Vocabulary& vocab, std::optional<int> color_word,
                             std::optional<int> shape_word);

// True iff every word present in the message matches the corresponding
// feature of the object.
inline bool is_true(const Message& message, const ObjectFeatures& object) {
  if (message.color_word && *message.color_word != object.color) return false;
  if (message.shape_word && *message.shape_word != object.shape) return false;
  return message.color_word || message.shape_word;
}

// The message uniquely true of exactly the objects sharing both features.
inline Message full_description(const ObjectFeatures& object) {
  return Message{object.color, object.shape};
}

// All 1- and 2-word messages in a fixed deterministic order: lexicographic in
// (color index, shape index) with an absent slot ordering before any present
// one. Size = shapes + colors + colors*shapes.
std::vector<Message> enumerate_messages(const Vocabulary& vocab);

// Position of a message within enumerate_messages(vocab), computed in O(1).
int message_index(const Message& message, const Vocabulary& vocab);

// Space-joined canonical surface form, e.g. "red circle".
std::string to_string(const Message& message, const Vocabulary& vocab);

// Inverse of to_string. Accepts one or two known words, at most one per
// feature class.
Message parse_message(const std::string& text, const Vocabulary& vocab);

// A referential game: an ordered object list plus the speaker's target index.
struct GameContext {
  std::vector<ObjectFeatures> objects;
  int target = 0;

  int size() const { return static_cast<int>(objects.size()); }
  const ObjectFeatures& target_object() const { return objects.at(target); }

  friend bool operator==(const GameContext&, const GameContext&) = default;
};

// Enforces the context invariants: at least two objects, target in range,
// all features within the vocabulary, and no distractor that matches the
// target in both features. Throws std::invalid_argument.
void validate_context(const GameContext& context, const Vocabulary& vocab);

// A probability vector: nonnegative entries summing to one.
class ProbVec {
 public:
  ProbVec() = default;

  static ProbVec uniform(int n);
  // Normalizes nonnegative weights; requires a positive sum.
  static ProbVec from_weights(std::vector<double> weights);
  // Validates entries >= 0 and |sum - 1| <= tol.
  static ProbVec from_probabilities(std::vector<double> probs, double tol = 1e-9);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<size_t>(i)]; }
  const std::vector<double>& values() const { return values_; }
  // Lowest index wins ties.
  int argmax() const;

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const ProbVec&, const ProbVec&) = default;

 private:
  explicit ProbVec(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

}  // namespace pragmasim
