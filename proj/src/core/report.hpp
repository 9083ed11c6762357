#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/ingest.hpp"
#include "core/model.hpp"
#include "core/sweep.hpp"

namespace featalign {

// Two decimals, rounding half away from zero on the value's shortest decimal
// representation (0.145 -> "0.15", 0.225 -> "0.23").
std::string format_2dp(double value);
// Shortest string that parses back to the same double.
std::string format_full(double value);

struct ScopeSummary {
  std::size_t scoped = 0;
  std::size_t benign = 0;
  std::map<std::string, std::size_t> dropped;  // reason -> count

  static ScopeSummary from(const EvaluationScope& scope);
  friend bool operator==(const ScopeSummary&, const ScopeSummary&) = default;
};

struct ModelResult {
  std::string model;
  ValidationStats stats;
  ScopeSummary scope;
  std::vector<std::string> unscoped_classes;
  std::vector<MetricPoint> points;
};

struct ResultsDocument {
  EvaluationConfig config;
  std::vector<ModelResult> models;
};

struct RenderedTable {
  std::string text;       // rounded, laid out like a paper table
  std::string delimited;  // CSV, full precision
};

// Rows are k values; each model contributes FAP/FAR/FAF1 columns from its
// dataset-level points. Throws Error(kIncompleteResults) naming every missing
// "model@k" cell.
RenderedTable render_comparison_table(std::span<const ModelResult> models,
                                      std::span<const int> k_values);

enum class ExportFormat { kDelimited, kStructured };

// Delimited: model,metric,level,subject,k,value,support with one row per
// point. Structured: JSON with the effective config, validation statistics
// and every point. Output bytes depend only on the input.
std::string export_results(const ResultsDocument& doc, ExportFormat format);

// Reads a structured export back. Throws Error(kParse) on malformed input.
ResultsDocument parse_structured_results(std::string_view text);

struct ChartStyle {
  int width = 760;
  int height = 480;
  int margin_left = 64;
  int margin_right = 220;
  int margin_top = 40;
  int margin_bottom = 56;
  int font_size = 12;
  std::string font_family = "sans-serif";
  std::vector<std::string> palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                   "#bcbd22", "#17becf"};
};

struct SvgDocument {
  std::string name;  // file name relative to the curves directory
  std::string content;
};

struct LabeledSeries {
  std::string label;
  const CurveSeries* series;
};

struct LabeledTradeoff {
  std::string label;
  const TradeoffCurve* curve;
};

// Metric against k, one polyline and legend entry per series, y in [0, 1].
// Each series marker becomes a labeled dashed reference line.
std::string render_metric_chart(std::string_view title, std::string_view y_label,
                                std::span<const LabeledSeries> series,
                                const ChartStyle& style);

// FAP against FAR, one polyline per curve; each marker becomes a labeled
// vertical reference line at that k's FAR.
std::string render_tradeoff_chart(std::string_view title,
                                  std::span<const LabeledTradeoff> curves,
                                  const ChartStyle& style);

struct ModelSweep {
  std::string model;
  SweepResult sweep;
  std::vector<TradeoffCurve> tradeoffs;  // class level, one per scoped class
};

// <metric>_<level>.svg for every metric and level, plus tradeoff_<class>.svg
// per class with one curve per model.
std::vector<SvgDocument> render_curves(std::span<const ModelSweep> sweeps,
                                       const ChartStyle& style = {});

// model,metric,level,subject,k,value
std::string export_curves_csv(std::span<const ModelSweep> sweeps);
// model,subject,k,far,fap,marker
std::string export_tradeoff_csv(std::span<const ModelSweep> sweeps);
// model,subject,expected_count,far_saturation_k,far_max,peak_faf1_k,peak_faf1
std::string export_summary_csv(std::span<const ModelSweep> sweeps);

// Lowercase ASCII slug for file names ("DDoS/DoS" -> "ddos_dos").
std::string slugify(std::string_view text);

std::string csv_escape(std::string_view field);

}  // namespace featalign
