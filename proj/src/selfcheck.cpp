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

#include "pragmasim/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "pragmasim/learning.hpp"

namespace pragmasim::check {

namespace {

double prior_of(const AgentSpec& spec, int n, int i) {
  return spec.prior.size() == 0 ? 1.0 / n : spec.prior[i];
}

double brute_cost(const Message& message, double word_cost) {
  return word_cost * message.length();
}

// exp(lambda * (log value - cost)) with value == 0 mapping to exactly 0.
double brute_speaker_weight(double listener_value, double cost, double lambda) {
  if (!(listener_value > 0.0)) return 0.0;
  return std::exp(lambda * (std::log(listener_value) - cost));
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

double brute_listener(int level, const Lexicon& lexicon, const GameContext& context,
                      const Message& message, int object_index, const AgentSpec& spec,
                      const Vocabulary& vocab) {
  const int n = context.size();
  if (level == 0) {
    double denominator = 0.0;
    for (int j = 0; j < n; ++j) {
      denominator += std::exp(lexicon.score(context.objects[j], message));
    }
    if (denominator == 0.0) return 0.0;
    return std::exp(lexicon.score(context.objects[object_index], message)) / denominator;
  }
  double numerator = 0.0;
  double denominator = 0.0;
  for (int j = 0; j < n; ++j) {
    double value = brute_speaker(level - 1, lexicon, context, message, j, spec, vocab) *
                   prior_of(spec, n, j);
    denominator += value;
    if (j == object_index) numerator = value;
  }
  if (denominator == 0.0) return 0.0;
  return numerator / denominator;
}

double brute_speaker(int level, const Lexicon& lexicon, const GameContext& context,
                     const Message& message, int target, const AgentSpec& spec,
                     const Vocabulary& vocab) {
  const std::vector<Message> messages = enumerate_messages(vocab);
  double numerator = 0.0;
  double denominator = 0.0;
  for (const Message& candidate : messages) {
    double weight;
    if (level == 0) {
      double score = lexicon.score(context.objects[target], candidate);
      weight = std::exp(spec.lambda * (score - brute_cost(candidate, spec.word_cost)));
    } else {
      double value =
          brute_listener(level - 1, lexicon, context, candidate, target, spec, vocab);
      weight = brute_speaker_weight(value, brute_cost(candidate, spec.word_cost), spec.lambda);
    }
    denominator += weight;
    if (candidate == message) numerator = weight;
  }
  if (denominator == 0.0) return 0.0;
  return numerator / denominator;
}

double fisher_exact_reference(const ContingencyTable& table) {
  using Int = unsigned __int128;
  const long a = table.correct_a, b = table.correct_b;
  const long c = table.incorrect_a, d = table.incorrect_b;
  const long row1 = a + b, row2 = c + d, col1 = a + c, col2 = b + d;
  const long n = row1 + row2;
  if (row1 == 0 || row2 == 0 || col1 == 0 || col2 == 0) return 1.0;

  // Pascal's triangle up to n in 128-bit integers.
  std::vector<std::vector<Int>> choose(static_cast<size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    choose[static_cast<size_t>(i)].assign(static_cast<size_t>(i) + 1, 1);
    for (long k = 1; k < i; ++k) {
      choose[static_cast<size_t>(i)][static_cast<size_t>(k)] =
          choose[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] +
          choose[static_cast<size_t>(i - 1)][static_cast<size_t>(k)];
    }
  }
  auto numerator_of = [&](long k) {
    return choose[static_cast<size_t>(row1)][static_cast<size_t>(k)] *
           choose[static_cast<size_t>(row2)][static_cast<size_t>(col1 - k)];
  };

  const Int observed = numerator_of(a);
  const long k_min = std::max(0L, col1 - row2);
  const long k_max = std::min(row1, col1);
  // Same tie rule as the implementation (p_k <= p_obs * (1 + 1e-7)) but
  // decided in exact integer arithmetic.
  constexpr Int kSlackScale = 10000000;  // 1e7
  Int included = 0;
  for (long k = k_min; k <= k_max; ++k) {
    Int numerator = numerator_of(k);
    if (numerator * kSlackScale <= observed * (kSlackScale + 1)) included += numerator;
  }
  return static_cast<double>(included) /
         static_cast<double>(choose[static_cast<size_t>(n)][static_cast<size_t>(col1)]);
}

SuiteResult rsa_brute_force_suite() {
  Timer timer;
  SuiteResult result;
  result.name = "rsa-brute-force";

  const Vocabulary vocab({"red", "blue"}, {"circle", "square"});
  const std::vector<Message> messages = enumerate_messages(vocab);
  const AgentSpec spec{1.0, 0.6, {}};

  // Ground truth plus a few random embedding lexicons.
  GroundTruthLexicon gt(vocab);
  std::vector<LexiconParams> random_params;
  for (uint64_t seed : {11u, 22u, 33u}) {
    SeededRng rng(seed);
    random_params.push_back(init_params(vocab, 3, 0.7, rng));
  }
  std::vector<const Lexicon*> lexicons{&gt};
  std::vector<EmbeddingLexicon> views;
  views.reserve(random_params.size());
  for (const LexiconParams& p : random_params) views.emplace_back(p);
  for (const EmbeddingLexicon& v : views) lexicons.push_back(&v);

  // All object types of the 2-color/2-shape world.
  std::vector<ObjectFeatures> types;
  for (int c = 0; c < 2; ++c) {
    for (int s = 0; s < 2; ++s) types.push_back(ObjectFeatures{c, s});
  }

  std::vector<GameContext> contexts;
  for (size_t i = 0; i < types.size(); ++i) {
    for (size_t j = 0; j < types.size(); ++j) {
      for (int target = 0; target < 2; ++target) {
        GameContext context{{types[i], types[j]}, target};
        try {
          validate_context(context, vocab);
          contexts.push_back(std::move(context));
        } catch (const std::invalid_argument&) {
        }
      }
      for (size_t k = 0; k < types.size(); ++k) {
        for (int target = 0; target < 3; ++target) {
          GameContext context{{types[i], types[j], types[k]}, target};
          try {
            validate_context(context, vocab);
            contexts.push_back(std::move(context));
          } catch (const std::invalid_argument&) {
          }
        }
      }
    }
  }

  bool structural_ok = true;
  for (const GameContext& context : contexts) {
    for (const Lexicon* lexicon : lexicons) {
      for (int level : {0, 2}) {
        for (const Message& message : messages) {
          std::vector<double> brute(static_cast<size_t>(context.size()));
          double total = 0.0;
          for (int i = 0; i < context.size(); ++i) {
            brute[static_cast<size_t>(i)] =
                brute_listener(level, *lexicon, context, message, i, spec, vocab);
            total += brute[static_cast<size_t>(i)];
          }
          bool implementation_threw = false;
          ProbVec dist;
          try {
            dist = listener(level, *lexicon, context, message, spec, vocab);
          } catch (const AllZeroSupportError&) {
            implementation_threw = true;
          }
          if (implementation_threw != (total == 0.0)) {
            structural_ok = false;
            result.detail = "zero-support disagreement";
            continue;
          }
          if (implementation_threw) {
            ++result.checks;
            continue;
          }
          for (int i = 0; i < context.size(); ++i) {
            result.max_error = std::max(
                result.max_error, std::abs(dist[i] - brute[static_cast<size_t>(i)]));
            ++result.checks;
          }
        }
      }
      for (int level : {1, 3}) {
        ProbVec dist = speaker(level, *lexicon, context, context.target, spec, vocab);
        for (size_t w = 0; w < messages.size(); ++w) {
          double brute = brute_speaker(level, *lexicon, context, messages[w], context.target,
                                       spec, vocab);
          result.max_error =
              std::max(result.max_error, std::abs(dist[static_cast<int>(w)] - brute));
          ++result.checks;
        }
      }
    }
  }

  result.passed = structural_ok && result.max_error <= 1e-12;
  result.seconds = timer.seconds();
  if (result.detail.empty()) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%zu contexts", contexts.size());
    result.detail = buffer;
  }
  return result;
}

SuiteResult gradient_suite(int instances, uint64_t seed) {
  Timer timer;
  SuiteResult result;
  result.name = "gradient-check";

  const Vocabulary& vocab = Vocabulary::standard();
  const std::vector<Message> messages = enumerate_messages(vocab);
  const AgentSpec spec{1.0, 0.6, {}};
  constexpr double kStep = 1e-5;
  constexpr double kTolerance = 1e-4;

  SeededRng rng(seed);
  const int dims[] = {4, 16, 8};
  for (int instance = 0; instance < instances; ++instance) {
    const int listener_level = (instance % 2) * 2;
    const int dim = dims[instance % 3];
    LexiconParams params = init_params(vocab, dim, 0.5, rng);

    const int n_objects = 2 + rng.uniform_int(4);
    GameContext game;
    game.target = rng.uniform_int(n_objects);
    for (int i = 0; i < n_objects; ++i) {
      game.objects.push_back(
          ObjectFeatures{rng.uniform_int(vocab.num_colors()), rng.uniform_int(vocab.num_shapes())});
    }
    for (int i = 0; i < n_objects; ++i) {
      while (i != game.target && game.objects[static_cast<size_t>(i)] == game.target_object()) {
        game.objects[static_cast<size_t>(i)] = ObjectFeatures{
            rng.uniform_int(vocab.num_colors()), rng.uniform_int(vocab.num_shapes())};
      }
    }
    const Message message = messages[static_cast<size_t>(
        rng.uniform_int(static_cast<int>(messages.size())))];

    const LexiconGrads grads =
        backward(params, game, message, listener_level, spec, vocab, nullptr);
    auto grad_fields = grads.fields();
    auto param_fields = params.fields();
    for (size_t f = 0; f < param_fields.size(); ++f) {
      for (size_t j = 0; j < param_fields[f]->size(); ++j) {
        const double saved = (*param_fields[f])[j];
        (*param_fields[f])[j] = saved + kStep;
        const double up = nll_loss(params, game, message, listener_level, spec, vocab);
        (*param_fields[f])[j] = saved - kStep;
        const double down = nll_loss(params, game, message, listener_level, spec, vocab);
        (*param_fields[f])[j] = saved;
        const double fd = (up - down) / (2.0 * kStep);
        const double analytic = (*grad_fields[f])[j];
        const double rel = std::abs(analytic - fd) /
                           std::max({std::abs(analytic), std::abs(fd), 1e-4});
        result.max_error = std::max(result.max_error, rel);
        ++result.checks;
      }
    }
  }

  result.passed = result.max_error < kTolerance;
  result.seconds = timer.seconds();
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer), "%d instances, h=%g, tol=%g", instances, kStep,
                kTolerance);
  result.detail = buffer;
  return result;
}

SuiteResult fisher_suite() {
  Timer timer;
  SuiteResult result;
  result.name = "fisher-exact";
  constexpr long kMaxTotal = 40;
  constexpr double kTolerance = 1e-9;

  bool pinned_ok = true;
  {
    const double p = fisher_exact(ContingencyTable{3, 1, 1, 3});
    pinned_ok = pinned_ok && std::abs(p - 34.0 / 70.0) <= 1e-12;
    pinned_ok = pinned_ok && fisher_exact(ContingencyTable{2, 2, 2, 2}) == 1.0;
    pinned_ok = pinned_ok && fisher_exact(ContingencyTable{0, 0, 0, 0}) == 1.0;
    result.checks += 3;
  }

  for (long a = 0; a <= kMaxTotal; ++a) {
    for (long b = 0; a + b <= kMaxTotal; ++b) {
      for (long c = 0; a + b + c <= kMaxTotal; ++c) {
        for (long d = 0; a + b + c + d <= kMaxTotal; ++d) {
          const ContingencyTable table{a, b, c, d};
          const double error = std::abs(fisher_exact(table) - fisher_exact_reference(table));
          result.max_error = std::max(result.max_error, error);
          ++result.checks;
        }
      }
    }
  }

  result.passed = pinned_ok && result.max_error <= kTolerance;
  result.seconds = timer.seconds();
  result.detail = pinned_ok ? "all tables with total <= 40" : "pinned-value mismatch";
  return result;
}

std::vector<SuiteResult> run_all_suites() {
  return {rsa_brute_force_suite(), gradient_suite(), fisher_suite()};
}

std::string format_suite_line(const SuiteResult& result) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), "%s %-16s checks=%-8ld max_err=%-10.3g %.2fs  %s",
                result.passed ? "PASS" : "FAIL", result.name.c_str(), result.checks,
                result.max_error, result.seconds, result.detail.c_str());
  return buffer;
}

}  // namespace pragmasim::check
