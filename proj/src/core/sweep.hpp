#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/ingest.hpp"
#include "core/model.hpp"

namespace featalign {

// All metric points for one corpus at the configured k values and levels.
// Points are ordered by level (dataset, class, instance), then metric, then
// subject (catalog order for classes, instance id within class), then k.
struct Evaluation {
  std::vector<int> k_values;
  std::vector<MetricPoint> points;
  // Catalog classes that had no scoped instances and so no class-level value.
  std::vector<std::string> unscoped_classes;
  std::size_t scoped_instances = 0;
};

// Ranks each scoped instance once and reads every k off a single cumulative
// pass. Throws Error(kNoEvaluableClasses) when the dataset level is requested
// and no class survives the empty-set policy.
Evaluation evaluate(std::span<const RankedAttribution> corpus,
                    const DomainFeatureCatalog& catalog,
                    const EvaluationScope& scope, const EvaluationConfig& config);

struct KRange {
  int low = 1;
  int high = 40;

  // "LO..HI"; throws Error(kInvalidConfig) if LO < 1 or HI < LO.
  static KRange parse(std::string_view text);
  std::vector<int> values() const;
};

// Per-class curve statistics reported next to the curves.
struct CurveSummary {
  std::string subject;
  std::size_t expected_count = 0;  // |F_c|
  int far_saturation_k = 0;        // smallest k at which FAR reaches its max
  double far_max = 0.0;
  int peak_faf1_k = 0;
  double peak_faf1 = 0.0;
};

struct SweepResult {
  std::vector<int> k_values;
  // For each metric (FAP, FAR, FAF1): one class-level series per scoped
  // catalog class, in catalog order, followed by the dataset-level series
  // (absent when no scoped class survives the empty-set policy). Class series
  // carry a marker at k == |F_c| when that k is in range.
  std::vector<CurveSeries> series;
  std::vector<CurveSummary> summaries;  // class level, catalog order

  const CurveSeries* find(Metric metric, Level level, std::string_view subject) const;
};

// Throws Error(kNoEvaluableClasses) when no catalog class has scoped instances.
SweepResult run_sweep(std::span<const RankedAttribution> corpus,
                      const DomainFeatureCatalog& catalog,
                      const EvaluationScope& scope, const EvaluationConfig& config,
                      const KRange& range);

struct TradeoffPoint {
  int k = 0;
  double far = 0.0;
  double fap = 0.0;
  friend bool operator==(const TradeoffPoint&, const TradeoffPoint&) = default;
};

struct TradeoffCurve {
  std::string subject;
  std::vector<TradeoffPoint> points;  // ordered by k
  std::vector<Marker> markers;
  std::vector<std::string> warnings;
};

// Pairs FAR (x) with FAP (y) per k and marks k == expected_count. Throws
// Error(kSeriesMismatch) if the two series cover different k values.
TradeoffCurve tradeoff_curve(const CurveSeries& fap_series,
                             const CurveSeries& far_series,
                             std::size_t expected_count);

// Smallest k attaining the maximum value.
SeriesPoint peak_faf1(const CurveSeries& series);

// Smallest k at which the series reaches its maximum.
SeriesPoint saturation_point(const CurveSeries& series);

}  // namespace featalign
