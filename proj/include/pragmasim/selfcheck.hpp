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
#include <string>
#include <vector>

#include "pragmasim/experiments.hpp"
#include "pragmasim/rsa.hpp"

// Independent checking paths. Everything in this header re-derives results by
// direct definition-level computation (explicit summation, central finite
// differences, exact integer enumeration) and never calls into the matrix
// recursion, the analytic gradients, or the floating-point Fisher routine it
// verifies. The library proper must not depend on this module.
namespace pragmasim::check {

// Literal recursive evaluation of the listener/speaker definitions by
// explicit summation. A listener query on a message that is false of every
// object returns 0 for every index (callers decide how to treat it).
double brute_listener(int level, const Lexicon& lexicon, const GameContext& context,
                      const Message& message, int object_index, const AgentSpec& spec,
                      const Vocabulary& vocab);
double brute_speaker(int level, const Lexicon& lexicon, const GameContext& context,
                     const Message& message, int target, const AgentSpec& spec,
                     const Vocabulary& vocab);

// Exact two-sided Fisher p-value by integer enumeration (128-bit binomials,
// totals <= ~60). Applies the same documented tie rule as the floating-point
// implementation, evaluated in exact arithmetic.
double fisher_exact_reference(const ContingencyTable& table);

struct SuiteResult {
  std::string name;
  bool passed = false;
  long checks = 0;
  double max_error = 0.0;
  double seconds = 0.0;
  std::string detail;
};

// Exhaustive 2-color/2-shape world, every context with 2 or 3 objects, every
// message/target, listener levels {0,2} and speaker levels {1,3}, ground
// truth plus seeded random lexicons, against brute_* within 1e-12.
SuiteResult rsa_brute_force_suite();

// Analytic gradients vs central differences (h=1e-5) over `instances` random
// (params, game, message) setups at listener levels 0 and 2; passes when the
// max floored relative error stays below 1e-4.
SuiteResult gradient_suite(int instances = 100, uint64_t seed = 1234);

// fisher_exact vs fisher_exact_reference for every 2x2 table with total <= 40
// (within 1e-9), plus pinned small-table values.
SuiteResult fisher_suite();

std::vector<SuiteResult> run_all_suites();

std::string format_suite_line(const SuiteResult& result);

}  // namespace pragmasim::check
