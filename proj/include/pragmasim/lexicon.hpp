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
#include <span>
#include <string>

#include "json.hpp"
#include "pragmasim/core.hpp"
#include "pragmasim/mat.hpp"
#include "pragmasim/rng.hpp"

namespace pragmasim {

// Learnable literal interpretation D(o, w): additive factored embeddings over
// symbolic features. An object embeds as color_feature_emb[color] +
// shape_feature_emb[shape]; a message embeds as the sum of its present word
// embeddings; the score is their dot product. All rows are stored row-major
// with width `dim`.
struct LexiconParams {
  int num_colors = 0;
  int num_shapes = 0;
  int dim = 0;
  std::vector<double> color_feature_emb;  // num_colors x dim
  std::vector<double> shape_feature_emb;  // num_shapes x dim
  std::vector<double> color_word_emb;     // num_colors x dim
  std::vector<double> shape_word_emb;     // num_shapes x dim

  static LexiconParams zeros(int num_colors, int num_shapes, int dim);
  static LexiconParams zeros_like(const LexiconParams& other) {
    return zeros(other.num_colors, other.num_shapes, other.dim);
  }

  int parameter_count() const { return (2 * num_colors + 2 * num_shapes) * dim; }
  bool same_shape(const LexiconParams& other) const {
    return num_colors == other.num_colors && num_shapes == other.num_shapes && dim == other.dim;
  }

  std::span<const double> color_feature(int i) const {
    return {color_feature_emb.data() + static_cast<size_t>(i) * dim, static_cast<size_t>(dim)};
  }
  std::span<const double> shape_feature(int i) const {
    return {shape_feature_emb.data() + static_cast<size_t>(i) * dim, static_cast<size_t>(dim)};
  }
  std::span<const double> color_word(int i) const {
    return {color_word_emb.data() + static_cast<size_t>(i) * dim, static_cast<size_t>(dim)};
  }
  std::span<const double> shape_word(int i) const {
    return {shape_word_emb.data() + static_cast<size_t>(i) * dim, static_cast<size_t>(dim)};
  }

  // Fixed field order: color features, shape features, color words, shape
  // words. Optimizer updates and serialization iterate in this order.
  std::array<std::vector<double>*, 4> fields() {
    return {&color_feature_emb, &shape_feature_emb, &color_word_emb, &shape_word_emb};
  }
  std::array<const std::vector<double>*, 4> fields() const {
    return {&color_feature_emb, &shape_feature_emb, &color_word_emb, &shape_word_emb};
  }

  friend bool operator==(const LexiconParams&, const LexiconParams&) = default;
};

// Entries drawn i.i.d. from N(0, init_scale^2).
LexiconParams init_params(const Vocabulary& vocab, int dim, double init_scale, SeededRng& rng);
// Standard-world convenience (6 colors, 5 shapes).
LexiconParams init_params(int dim, double init_scale, SeededRng& rng);

double literal_score(const LexiconParams& params, const ObjectFeatures& object,
                     const Message& message);

// Anything the reasoning recursion can score.
class Lexicon {
 public:
  virtual ~Lexicon() = default;
  virtual double score(const ObjectFeatures& object, const Message& message) const = 0;
};

// Log-domain indicator lexicon of a knowledgeable agent: 0 for true messages,
// -infinity for false ones. Downstream softmaxes map the sentinel to an exact
// zero probability.
class GroundTruthLexicon final : public Lexicon {
 public:
  explicit GroundTruthLexicon(const Vocabulary& vocab) : vocab_(&vocab) {}
  double score(const ObjectFeatures& object, const Message& message) const override;
  const Vocabulary& vocab() const { return *vocab_; }

 private:
  const Vocabulary* vocab_;
};

// Non-owning view of learned parameters; the params must outlive the view.
class EmbeddingLexicon final : public Lexicon {
 public:
  explicit EmbeddingLexicon(const LexiconParams& params) : params_(&params) {}
  double score(const ObjectFeatures& object, const Message& message) const override {
    return literal_score(*params_, object, message);
  }
  const LexiconParams& params() const { return *params_; }

 private:
  const LexiconParams* params_;
};

// Entry (i, w) holds lexicon.score(objects[i], messages[w]).
Mat score_matrix(const Lexicon& lexicon, const GameContext& context,
                 const std::vector<Message>& messages);

// Versioned JSON checkpoint (field name -> row-major array). Writes are
// bit-stable for identical params; `meta` is echoed back on load.
void save_checkpoint(const LexiconParams& params, const std::string& path,
                     const nlohmann::json& meta = nlohmann::json::object());
LexiconParams load_checkpoint(const std::string& path, nlohmann::json* meta = nullptr);

}  // namespace pragmasim
