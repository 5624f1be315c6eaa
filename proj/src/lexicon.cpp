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

#include "pragmasim/lexicon.hpp"

#include <fstream>
#include <limits>
#include <stdexcept>

namespace pragmasim {

namespace {
constexpr int kCheckpointVersion = 1;
constexpr const char* kCheckpointFormat = "pragmasim-lexicon";
}  // namespace

LexiconParams LexiconParams::zeros(int num_colors, int num_shapes, int dim) {
  if (num_colors < 1 || num_shapes < 1 || dim < 1) {
    throw std::invalid_argument("lexicon needs num_colors, num_shapes, dim >= 1");
  }
  LexiconParams params;
  params.num_colors = num_colors;
  params.num_shapes = num_shapes;
  params.dim = dim;
  params.color_feature_emb.assign(static_cast<size_t>(num_colors) * dim, 0.0);
  params.shape_feature_emb.assign(static_cast<size_t>(num_shapes) * dim, 0.0);
  params.color_word_emb.assign(static_cast<size_t>(num_colors) * dim, 0.0);
  params.shape_word_emb.assign(static_cast<size_t>(num_shapes) * dim, 0.0);
  return params;
}

LexiconParams init_params(const Vocabulary& vocab, int dim, double init_scale, SeededRng& rng) {
  if (!(init_scale >= 0.0)) throw std::invalid_argument("init_scale must be nonnegative");
  LexiconParams params = LexiconParams::zeros(vocab.num_colors(), vocab.num_shapes(), dim);
  for (auto* field : params.fields()) {
    for (double& entry : *field) entry = init_scale * rng.normal();
  }
  return params;
}

LexiconParams init_params(int dim, double init_scale, SeededRng& rng) {
  return init_params(Vocabulary::standard(), dim, init_scale, rng);
}

double literal_score(const LexiconParams& params, const ObjectFeatures& object,
                     const Message& message) {
  std::span<const double> cf = params.color_feature(object.color);
  std::span<const double> sf = params.shape_feature(object.shape);
  double score = 0.0;
  if (message.color_word) {
    std::span<const double> cw = params.color_word(*message.color_word);
    for (int k = 0; k < params.dim; ++k) score += (cf[k] + sf[k]) * cw[k];
  }
  if (message.shape_word) {
    std::span<const double> sw = params.shape_word(*message.shape_word);
    for (int k = 0; k < params.dim; ++k) score += (cf[k] + sf[k]) * sw[k];
  }
  return score;
}

double GroundTruthLexicon::score(const ObjectFeatures& object, const Message& message) const {
  return is_true(message, object) ? 0.0 : -std::numeric_limits<double>::infinity();
}

Mat score_matrix(const Lexicon& lexicon, const GameContext& context,
                 const std::vector<Message>& messages) {
  if (context.objects.empty() || messages.empty()) {
    throw std::invalid_argument("score_matrix needs a nonempty context and message list");
  }
  Mat scores(context.size(), static_cast<int>(messages.size()));
  for (int i = 0; i < scores.rows; ++i) {
    for (int w = 0; w < scores.cols; ++w) {
      scores(i, w) = lexicon.score(context.objects[i], messages[w]);
    }
  }
  return scores;
}

void save_checkpoint(const LexiconParams& params, const std::string& path,
                     const nlohmann::json& meta) {
  nlohmann::json j{{"format", kCheckpointFormat},
                   {"version", kCheckpointVersion},
                   {"num_colors", params.num_colors},
                   {"num_shapes", params.num_shapes},
                   {"dim", params.dim},
                   {"color_feature_emb", params.color_feature_emb},
                   {"shape_feature_emb", params.shape_feature_emb},
                   {"color_word_emb", params.color_word_emb},
                   {"shape_word_emb", params.shape_word_emb},
                   {"meta", meta}};
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing checkpoint: " + path);
}

LexiconParams load_checkpoint(const std::string& path, nlohmann::json* meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("corrupt checkpoint " + path + ": " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kCheckpointFormat) {
    throw std::runtime_error("not a lexicon checkpoint: " + path);
  }
  if (j.value("version", -1) != kCheckpointVersion) {
    throw std::runtime_error("unsupported checkpoint version in " + path);
  }
  LexiconParams params;
  try {
    params = LexiconParams::zeros(j.at("num_colors").get<int>(), j.at("num_shapes").get<int>(),
                                  j.at("dim").get<int>());
    params.color_feature_emb = j.at("color_feature_emb").get<std::vector<double>>();
    params.shape_feature_emb = j.at("shape_feature_emb").get<std::vector<double>>();
    params.color_word_emb = j.at("color_word_emb").get<std::vector<double>>();
    params.shape_word_emb = j.at("shape_word_emb").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("corrupt checkpoint " + path + ": " + e.what());
  }
  const LexiconParams expected =
      LexiconParams::zeros(params.num_colors, params.num_shapes, params.dim);
  auto got = params.fields();
  auto want = expected.fields();
  for (size_t f = 0; f < got.size(); ++f) {
    if (got[f]->size() != want[f]->size()) {
      throw std::runtime_error("checkpoint field size mismatch in " + path);
    }
  }
  if (meta) *meta = j.value("meta", nlohmann::json::object());
  return params;
}

}  // namespace pragmasim
