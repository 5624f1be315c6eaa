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

#include <string>
#include <vector>

#include "json.hpp"
#include "pragmasim/experiments.hpp"
#include "pragmasim/learning.hpp"

namespace pragmasim {

// 16-hex-digit FNV-1a of a canonical (sorted-key) JSON dump; identifies the
// effective configuration in report rows.
std::string config_hash(const nlohmann::json& config);

// Effective-config JSON echoes used for hashing and report summaries.
nlohmann::json to_json(const TrainConfig& config);
nlohmann::json to_json(const EvalConfig& config);
nlohmann::json to_json(const Table1Config& config);
nlohmann::json to_json(const Metrics& metrics);

// Atomic-enough writes: truncate + write + close; reruns with identical
// content produce identical bytes.
void write_text_file(const std::string& path, const std::string& content);

// One polyline per series on a fixed 640x400 canvas.
struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};
std::string render_line_chart_svg(const std::string& title, const std::string& x_label,
                                  const std::string& y_label,
                                  const std::vector<ChartSeries>& series);

// Report writers return the paths they wrote (CSV + JSON, plus SVG for the
// learning curves). Formats are documented in docs/FORMATS.md.
std::vector<std::string> write_eval_report(const Metrics& metrics, const EvalConfig& config,
                                           const std::string& out_dir);
std::vector<std::string> write_train_outputs(const TrainResult& result,
                                             const TrainConfig& config,
                                             const std::string& out_dir);
std::vector<std::string> write_table1_report(const Table1Report& report,
                                             const std::string& out_dir);
std::vector<std::string> write_table2_report(const Table2Report& report,
                                             const std::string& out_dir);
std::vector<std::string> write_table3_report(const Table3Report& report,
                                             const std::string& out_dir);
std::vector<std::string> write_pairings_report(const PairingsReport& report,
                                               const std::string& out_dir);
std::vector<std::string> write_curves_report(const CurvesReport& report,
                                             const std::string& out_dir);

}  // namespace pragmasim
