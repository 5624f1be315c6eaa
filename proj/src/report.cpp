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

#include "pragmasim/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace pragmasim {

namespace {

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

std::string fixed6(double value) { return fmt("%.6f", value); }
std::string general(double value) { return fmt("%.8g", value); }

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
}

}  // namespace

std::string config_hash(const nlohmann::json& config) {
  const std::string canonical = config.dump();
  uint64_t hash = 0xCBF29CE484222325ull;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001B3ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

nlohmann::json to_json(const TrainConfig& config) {
  return nlohmann::json{{"speaker_level", config.speaker_level},
                        {"listener_level", config.listener_level},
                        {"corr", config.corr},
                        {"n_objects", config.n_objects},
                        {"word_cost", config.word_cost},
                        {"steps", config.steps},
                        {"batch_size", config.batch_size},
                        {"dim", config.dim},
                        {"init_scale", config.init_scale},
                        {"selection", to_string(config.selection)},
                        {"lr", config.optimizer.lr},
                        {"beta1", config.optimizer.beta1},
                        {"beta2", config.optimizer.beta2},
                        {"epsilon", config.optimizer.epsilon},
                        {"weight_decay", config.optimizer.weight_decay},
                        {"seed", config.seed}};
}

nlohmann::json to_json(const EvalConfig& config) {
  return nlohmann::json{{"listener_eval_level", config.listener_eval_level},
                        {"speaker_eval_level", config.speaker_eval_level},
                        {"corr", config.corr},
                        {"n_objects", config.n_objects},
                        {"word_cost", config.word_cost},
                        {"constellations", config.constellations},
                        {"games_per_constellation", config.games_per_constellation},
                        {"selection", to_string(config.selection)},
                        {"seed", config.seed}};
}

nlohmann::json to_json(const Table1Config& config) {
  return nlohmann::json{{"distractor_counts", config.distractor_counts},
                        {"corr", config.corr},
                        {"word_cost", config.word_cost},
                        {"constellations", config.constellations},
                        {"games_per_constellation", config.games_per_constellation},
                        {"selection", to_string(config.selection)},
                        {"seed", config.seed}};
}

nlohmann::json to_json(const Metrics& metrics) {
  return nlohmann::json{{"accuracy", metrics.accuracy},
                        {"correct_count", metrics.correct_count},
                        {"total_count", metrics.total_count},
                        {"avg_message_length", metrics.avg_message_length},
                        {"per_constellation_accuracy", metrics.per_constellation_accuracy}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing: " + path);
}

std::string render_line_chart_svg(const std::string& title, const std::string& x_label,
                                  const std::string& y_label,
                                  const std::vector<ChartSeries>& series) {
  constexpr double width = 640, height = 400;
  constexpr double left = 60, right = 616, top = 40, bottom = 360;
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  bool first = true;
  for (const ChartSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (x_max == x_min) x_max = x_min + 1;
  if (y_max == y_min) y_max = y_min + 1;

  auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - y_min) / (y_max - y_min) * (bottom - top); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", width) +
         "\" height=\"" + fmt("%.0f", height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" + title + "</text>\n";
  svg += "<line x1=\"" + fmt("%.1f", left) + "\" y1=\"" + fmt("%.1f", bottom) + "\" x2=\"" +
         fmt("%.1f", right) + "\" y2=\"" + fmt("%.1f", bottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt("%.1f", left) + "\" y1=\"" + fmt("%.1f", top) + "\" x2=\"" +
         fmt("%.1f", left) + "\" y2=\"" + fmt("%.1f", bottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    double xv = x_min + (x_max - x_min) * tick / 4.0;
    double yv = y_min + (y_max - y_min) * tick / 4.0;
    svg += "<text x=\"" + fmt("%.1f", sx(xv)) + "\" y=\"" + fmt("%.1f", bottom + 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
           fmt("%g", xv) + "</text>\n";
    svg += "<text x=\"" + fmt("%.1f", left - 6) + "\" y=\"" + fmt("%.1f", sy(yv) + 3) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" +
           fmt("%.2f", yv) + "</text>\n";
  }
  svg += "<text x=\"320\" y=\"392\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" + x_label + "</text>\n";
  svg += "<text x=\"14\" y=\"200\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 14 200)\">" + y_label + "</text>\n";
  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % 4];
    std::string points;
    for (const auto& [x, y] : series[s].points) {
      points += fmt("%.1f", sx(x)) + "," + fmt("%.1f", sy(y)) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    svg += "<text x=\"" + fmt("%.1f", right - 90) + "\" y=\"" +
           fmt("%.1f", top + 16 + 16 * static_cast<double>(s)) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + color + "\">" +
           series[s].label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::string> write_eval_report(const Metrics& metrics, const EvalConfig& config,
                                           const std::string& out_dir) {
  ensure_dir(out_dir);
  const nlohmann::json config_json = to_json(config);
  const std::string hash = config_hash(config_json);

  std::string csv =
      "config_hash,listener_level,speaker_level,corr,n_objects,cost,accuracy,n,avg_len\n";
  csv += hash + "," + std::to_string(config.listener_eval_level) + "," +
         std::to_string(config.speaker_eval_level) + "," + std::to_string(config.corr) + "," +
         std::to_string(config.n_objects) + "," + fixed6(config.word_cost) + "," +
         fixed6(metrics.accuracy) + "," + std::to_string(metrics.total_count) + "," +
         fixed6(metrics.avg_message_length) + "\n";

  nlohmann::json summary{{"version", 1},
                         {"report", "eval"},
                         {"config_hash", hash},
                         {"config", config_json},
                         {"metrics", to_json(metrics)}};

  const std::string csv_path = join_path(out_dir, "eval_metrics.csv");
  const std::string json_path = join_path(out_dir, "eval_metrics.json");
  write_text_file(csv_path, csv);
  write_text_file(json_path, summary.dump(2) + "\n");
  return {csv_path, json_path};
}

std::vector<std::string> write_train_outputs(const TrainResult& result,
                                             const TrainConfig& config,
                                             const std::string& out_dir) {
  ensure_dir(out_dir);
  const nlohmann::json config_json = to_json(config);

  std::string csv = "step,loss,grad_norm\n";
  for (const TrainStepRecord& record : result.curve) {
    csv += std::to_string(record.step) + "," + general(record.loss) + "," +
           general(record.grad_norm) + "\n";
  }

  const std::string checkpoint_path = join_path(out_dir, "checkpoint.json");
  const std::string curve_path = join_path(out_dir, "train_curve.csv");
  save_checkpoint(result.params, checkpoint_path,
                  nlohmann::json{{"train_config", config_json},
                                 {"config_hash", config_hash(config_json)}});
  write_text_file(curve_path, csv);
  return {checkpoint_path, curve_path};
}

std::vector<std::string> write_table1_report(const Table1Report& report,
                                             const std::string& out_dir) {
  ensure_dir(out_dir);
  const nlohmann::json config_json = to_json(report.config);
  const std::string hash = config_hash(config_json);

  std::string csv = "config_hash,distractors,s1_avg_len,s3_avg_len\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    csv += hash + "," + std::to_string(row.distractors) + "," +
           fixed6(row.s1.avg_message_length) + "," + fixed6(row.s3.avg_message_length) + "\n";
    rows.push_back({{"distractors", row.distractors},
                    {"s1_avg_len", row.s1.avg_message_length},
                    {"s3_avg_len", row.s3.avg_message_length},
                    {"games_per_cell", row.s1.total_count}});
  }

  nlohmann::json summary{{"version", 1},
                         {"report", "table1"},
                         {"config_hash", hash},
                         {"config", config_json},
                         {"rows", rows}};

  const std::string csv_path = join_path(out_dir, "table1.csv");
  const std::string json_path = join_path(out_dir, "table1.json");
  write_text_file(csv_path, csv);
  write_text_file(json_path, summary.dump(2) + "\n");
  return {csv_path, json_path};
}

namespace {

// Shared layout for the two four-cell accuracy tables.
std::vector<std::string> write_cells_report(const std::string& name,
                                            const nlohmann::json& config_json,
                                            const std::array<CellResult, 4>& cells,
                                            const std::array<double, 2>& pair_p_values,
                                            int corr, int n_objects, double cost,
                                            const std::string& out_dir) {
  const std::string hash = config_hash(config_json);
  std::string csv =
      "config_hash,cell,listener_level,speaker_level,corr,n_objects,cost,accuracy,n,avg_len,"
      "p_value,stars\n";
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < cells.size(); ++i) {
    const CellResult& cell = cells[i];
    const double p = pair_p_values[i / 2];
    csv += hash + "," + cell.label + "," + std::to_string(cell.listener_level) + "," +
           std::to_string(cell.speaker_level) + "," + std::to_string(corr) + "," +
           std::to_string(n_objects) + "," + fixed6(cost) + "," +
           fixed6(cell.metrics.accuracy) + "," + std::to_string(cell.metrics.total_count) + "," +
           fixed6(cell.metrics.avg_message_length) + "," + general(p) + "," +
           significance_stars(p) + "\n";
    rows.push_back({{"cell", cell.label},
                    {"listener_level", cell.listener_level},
                    {"speaker_level", cell.speaker_level},
                    {"metrics", to_json(cell.metrics)},
                    {"pair_p_value", p}});
  }
  nlohmann::json summary{{"version", 1},
                         {"report", name},
                         {"config_hash", hash},
                         {"config", config_json},
                         {"cells", rows}};
  const std::string csv_path = join_path(out_dir, name + ".csv");
  const std::string json_path = join_path(out_dir, name + ".json");
  write_text_file(csv_path, csv);
  write_text_file(json_path, summary.dump(2) + "\n");
  return {csv_path, json_path};
}

}  // namespace

std::vector<std::string> write_table2_report(const Table2Report& report,
                                             const std::string& out_dir) {
  ensure_dir(out_dir);
  return write_cells_report("table2", to_json(report.base), report.cells,
                            {report.p_s3_pair, report.p_s1_pair}, report.base.corr,
                            report.base.n_objects, report.base.word_cost, out_dir);
}

std::vector<std::string> write_table3_report(const Table3Report& report,
                                             const std::string& out_dir) {
  ensure_dir(out_dir);
  nlohmann::json config_json{{"train", to_json(report.config.train_base)},
                             {"eval", to_json(report.config.eval_base)}};
  return write_cells_report("table3", config_json, report.cells,
                            {report.p_l0_pair, report.p_l2_pair}, report.config.eval_base.corr,
                            report.config.eval_base.n_objects,
                            report.config.eval_base.word_cost, out_dir);
}

std::vector<std::string> write_pairings_report(const PairingsReport& report,
                                               const std::string& out_dir) {
  ensure_dir(out_dir);
  nlohmann::json environments = nlohmann::json::array();
  for (const auto& [n, corr] : report.config.environments) {
    environments.push_back({{"n_objects", n}, {"corr", corr}});
  }
  nlohmann::json config_json{{"environments", environments},
                             {"train", to_json(report.config.train_base)},
                             {"eval", to_json(report.config.eval_base)}};
  const std::string hash = config_hash(config_json);

  std::string csv = "config_hash,n_objects,corr,acc_l0_s1,acc_l0_s3,acc_l2_s1,acc_l2_s3\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    csv += hash + "," + std::to_string(row.n_objects) + "," + std::to_string(row.corr);
    nlohmann::json cells = nlohmann::json::array();
    for (const CellResult& cell : row.cells) {
      csv += "," + fixed6(cell.metrics.accuracy);
      cells.push_back({{"pair", cell.label},
                       {"listener_level", cell.listener_level},
                       {"speaker_level", cell.speaker_level},
                       {"metrics", to_json(cell.metrics)}});
    }
    csv += "\n";
    rows.push_back({{"n_objects", row.n_objects}, {"corr", row.corr}, {"cells", cells}});
  }

  nlohmann::json summary{{"version", 1},
                         {"report", "fig3"},
                         {"config_hash", hash},
                         {"config", config_json},
                         {"rows", rows}};
  const std::string csv_path = join_path(out_dir, "fig3.csv");
  const std::string json_path = join_path(out_dir, "fig3.json");
  write_text_file(csv_path, csv);
  write_text_file(json_path, summary.dump(2) + "\n");
  return {csv_path, json_path};
}

std::vector<std::string> write_curves_report(const CurvesReport& report,
                                             const std::string& out_dir) {
  ensure_dir(out_dir);
  nlohmann::json config_json{{"train", to_json(report.config.train_base)},
                             {"eval", to_json(report.config.eval_base)},
                             {"eval_every", report.config.eval_every}};
  const std::string hash = config_hash(config_json);

  std::string csv = "step,loss_l0,acc_l0,loss_l2,acc_l2\n";
  nlohmann::json l0 = nlohmann::json::array();
  nlohmann::json l2 = nlohmann::json::array();
  const size_t n = std::min(report.level0.size(), report.level2.size());
  for (size_t i = 0; i < n; ++i) {
    const CurvePoint& p0 = report.level0[i];
    const CurvePoint& p2 = report.level2[i];
    csv += std::to_string(p0.step) + "," + general(p0.loss) + "," + fixed6(p0.accuracy) + "," +
           general(p2.loss) + "," + fixed6(p2.accuracy) + "\n";
    l0.push_back({{"step", p0.step}, {"loss", p0.loss}, {"accuracy", p0.accuracy}});
    l2.push_back({{"step", p2.step}, {"loss", p2.loss}, {"accuracy", p2.accuracy}});
  }

  nlohmann::json summary{{"version", 1},
                         {"report", "fig4"},
                         {"config_hash", hash},
                         {"config", config_json},
                         {"level0", l0},
                         {"level2", l2}};

  ChartSeries s0{"listener level 0", {}};
  ChartSeries s2{"listener level 2", {}};
  for (const CurvePoint& p : report.level0) s0.points.push_back({p.step, p.accuracy});
  for (const CurvePoint& p : report.level2) s2.points.push_back({p.step, p.accuracy});
  const std::string svg = render_line_chart_svg("Held-out accuracy during training",
                                                "training step", "accuracy", {s0, s2});

  const std::string csv_path = join_path(out_dir, "fig4.csv");
  const std::string json_path = join_path(out_dir, "fig4.json");
  const std::string svg_path = join_path(out_dir, "fig4.svg");
  write_text_file(csv_path, csv);
  write_text_file(json_path, summary.dump(2) + "\n");
  write_text_file(svg_path, svg);
  return {csv_path, json_path, svg_path};
}

}  // namespace pragmasim
