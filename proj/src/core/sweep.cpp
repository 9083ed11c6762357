#include "core/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>

#include "core/error.hpp"
#include "core/metrics.hpp"
#include "core/parallel.hpp"

namespace featalign {

namespace {

constexpr Metric kMetrics[] = {Metric::kFap, Metric::kFar, Metric::kFaf1};

struct Row {
  std::size_t class_slot;  // index into EvaluationScope::classes
  std::size_t corpus_index;
};

// overlap/explained counts for every (scoped instance, k).
struct CountTable {
  std::vector<Row> rows;
  std::size_t width = 0;
  std::vector<std::uint32_t> overlap;
  std::vector<std::uint32_t> explained;
};

CountTable count_alignments(std::span<const RankedAttribution> corpus,
                            const DomainFeatureCatalog& catalog,
                            const EvaluationScope& scope, RankingRule rule,
                            std::span<const int> k_values) {
  CountTable table;
  for (std::size_t c = 0; c < scope.classes.size(); ++c) {
    for (std::size_t idx : scope.classes[c].instances) table.rows.push_back({c, idx});
  }
  table.width = k_values.size();
  table.overlap.resize(table.rows.size() * table.width);
  table.explained.resize(table.rows.size() * table.width);

  parallel_for(table.rows.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const Row& row = table.rows[r];
      const RankedAttribution& e = corpus[row.corpus_index];
      const DomainFeatureSet& f =
          catalog.classes()[scope.classes[row.class_slot].catalog_index];
      const std::vector<std::size_t> order = e.ranked_order(rule);

      std::uint32_t hits = 0;
      std::size_t pos = 0;
      for (std::size_t j = 0; j < k_values.size(); ++j) {
        const std::size_t limit =
            std::min(static_cast<std::size_t>(k_values[j]), order.size());
        for (; pos < limit; ++pos) {
          if (f.contains(e.entries()[order[pos]].feature.canonical())) ++hits;
        }
        table.overlap[r * table.width + j] = hits;
        table.explained[r * table.width + j] = static_cast<std::uint32_t>(limit);
      }
    }
  });
  return table;
}

}  // namespace

Evaluation evaluate(std::span<const RankedAttribution> corpus,
                    const DomainFeatureCatalog& catalog,
                    const EvaluationScope& scope, const EvaluationConfig& config) {
  config.validate();
  Evaluation out;
  out.k_values = config.k_values;
  const std::span<const int> ks(config.k_values);
  const CountTable table =
      count_alignments(corpus, catalog, scope, config.ranking, ks);
  out.scoped_instances = table.rows.size();

  // Row ranges per class slot; rows are grouped by class in scope order.
  std::vector<std::size_t> first_row(scope.classes.size() + 1, 0);
  for (std::size_t c = 0; c < scope.classes.size(); ++c) {
    first_row[c + 1] = first_row[c] + scope.classes[c].instances.size();
    if (scope.classes[c].instances.empty()) {
      out.unscoped_classes.push_back(scope.classes[c].class_name);
    }
  }

  // class_points[metric][class slot][k index]
  std::vector<std::vector<std::vector<MetricPoint>>> class_points(
      std::size(kMetrics), std::vector<std::vector<MetricPoint>>(scope.classes.size()));
  std::vector<double> values;
  for (std::size_t m = 0; m < std::size(kMetrics); ++m) {
    for (std::size_t c = 0; c < scope.classes.size(); ++c) {
      const std::size_t begin = first_row[c];
      const std::size_t end = first_row[c + 1];
      if (begin == end) continue;
      const DomainFeatureSet& f = catalog.classes()[scope.classes[c].catalog_index];
      for (std::size_t j = 0; j < ks.size(); ++j) {
        values.clear();
        bool degenerate = false;
        for (std::size_t r = begin; r < end; ++r) {
          const std::uint32_t explained = table.explained[r * table.width + j];
          degenerate = degenerate || explained == 0;
          values.push_back(instance_metric(kMetrics[m],
                                           table.overlap[r * table.width + j],
                                           explained, f.size()));
        }
        MetricPoint p = class_level(kMetrics[m], scope.classes[c].class_name, ks[j],
                                    values, config.aggregation);
        if (f.empty()) p.flags |= kFlagEmptyDomainSet;
        if (degenerate) p.flags |= kFlagDegenerateExplanation;
        class_points[m][c].push_back(std::move(p));
      }
    }
  }

  if ((config.levels & kLevelDataset) != 0) {
    std::vector<MetricPoint> per_k;
    for (std::size_t m = 0; m < std::size(kMetrics); ++m) {
      for (std::size_t j = 0; j < ks.size(); ++j) {
        per_k.clear();
        for (const auto& cls : class_points[m]) {
          if (!cls.empty()) per_k.push_back(cls[j]);
        }
        out.points.push_back(
            dataset_level(per_k, config.aggregation, config.empty_set_policy));
      }
    }
  }

  if ((config.levels & kLevelClass) != 0) {
    for (auto& metric_points : class_points) {
      for (auto& cls : metric_points) {
        for (auto& p : cls) out.points.push_back(std::move(p));
      }
    }
  }

  if ((config.levels & kLevelInstance) != 0) {
    for (Metric metric : kMetrics) {
      for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const Row& row = table.rows[r];
        const DomainFeatureSet& f =
            catalog.classes()[scope.classes[row.class_slot].catalog_index];
        for (std::size_t j = 0; j < ks.size(); ++j) {
          InstanceAlignment a{corpus[row.corpus_index].instance_id(),
                              f.class_name(),
                              ks[j],
                              table.overlap[r * table.width + j],
                              table.explained[r * table.width + j],
                              f.size()};
          MetricPoint p;
          p.metric = metric;
          p.level = Level::kInstance;
          p.subject = a.instance_id;
          p.k = a.k;
          p.value = instance_metric(metric, a);
          p.support = 1;
          p.flags = a.flags();
          out.points.push_back(std::move(p));
        }
      }
    }
  }
  return out;
}

KRange KRange::parse(std::string_view text) {
  const auto sep = text.find("..");
  auto number = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::kInvalidConfig, "bad k range '" + std::string(text) + "'");
    }
    return v;
  };
  if (sep == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidConfig,
                "k range must look like LO..HI, got '" + std::string(text) + "'");
  }
  KRange range{number(text.substr(0, sep)), number(text.substr(sep + 2))};
  if (range.low < 1 || range.high < range.low) {
    throw Error(ErrorCode::kInvalidConfig,
                "k range needs 1 <= LO <= HI, got '" + std::string(text) + "'");
  }
  return range;
}

std::vector<int> KRange::values() const {
  std::vector<int> ks;
  for (int k = low; k <= high; ++k) ks.push_back(k);
  return ks;
}

const CurveSeries* SweepResult::find(Metric metric, Level level,
                                     std::string_view subject) const {
  for (const auto& s : series) {
    if (s.metric == metric && s.level == level && s.subject == subject) return &s;
  }
  return nullptr;
}

SweepResult run_sweep(std::span<const RankedAttribution> corpus,
                      const DomainFeatureCatalog& catalog,
                      const EvaluationScope& scope, const EvaluationConfig& config,
                      const KRange& range) {
  if (range.low < 1 || range.high < range.low) {
    throw Error(ErrorCode::kInvalidConfig, "k range needs 1 <= LO <= HI");
  }
  bool any_scoped = false;
  bool any_evaluable = false;
  for (const auto& cls : scope.classes) {
    if (cls.instances.empty()) continue;
    any_scoped = true;
    any_evaluable = any_evaluable ||
                    config.empty_set_policy == EmptySetPolicy::kIncludeAsZero ||
                    !catalog.classes()[cls.catalog_index].empty();
  }
  if (!any_scoped) {
    throw Error(ErrorCode::kNoEvaluableClasses, "no catalog class has scoped instances");
  }
  EvaluationConfig sweep_config = config;
  sweep_config.k_values = range.values();
  // Class curves stay useful even when every scoped class has an empty domain
  // set; only the dataset curve is dropped then.
  sweep_config.levels = kLevelClass | (any_evaluable ? kLevelDataset : 0u);
  const Evaluation eval = evaluate(corpus, catalog, scope, sweep_config);

  SweepResult out;
  out.k_values = sweep_config.k_values;
  for (const MetricPoint& p : eval.points) {
    if (out.series.empty() || out.series.back().metric != p.metric ||
        out.series.back().level != p.level || out.series.back().subject != p.subject) {
      CurveSeries s;
      s.metric = p.metric;
      s.level = p.level;
      s.subject = p.subject;
      out.series.push_back(std::move(s));
    }
    out.series.back().points.push_back({p.k, p.value});
    out.series.back().flags |= p.flags & kFlagEmptyDomainSet;
  }
  // evaluate() emits dataset points first; move them behind the class series.
  std::stable_partition(out.series.begin(), out.series.end(),
                        [](const CurveSeries& s) { return s.level == Level::kClass; });
  std::stable_sort(out.series.begin(), out.series.end(),
                   [](const CurveSeries& a, const CurveSeries& b) {
                     return a.metric < b.metric;
                   });

  for (auto& s : out.series) {
    if (s.level != Level::kClass) continue;
    const auto idx = catalog.find(s.subject);
    const auto expected = static_cast<int>(catalog.classes()[*idx].size());
    if (expected >= range.low && expected <= range.high) {
      s.markers.push_back({expected, "k=" + std::to_string(expected)});
    }
  }

  for (const auto& cls : scope.classes) {
    if (cls.instances.empty()) continue;
    const CurveSeries* far = out.find(Metric::kFar, Level::kClass, cls.class_name);
    const CurveSeries* faf1 = out.find(Metric::kFaf1, Level::kClass, cls.class_name);
    CurveSummary summary;
    summary.subject = cls.class_name;
    summary.expected_count = catalog.classes()[cls.catalog_index].size();
    const SeriesPoint sat = saturation_point(*far);
    summary.far_saturation_k = sat.k;
    summary.far_max = sat.value;
    const SeriesPoint peak = peak_faf1(*faf1);
    summary.peak_faf1_k = peak.k;
    summary.peak_faf1 = peak.value;
    out.summaries.push_back(std::move(summary));
  }
  return out;
}

TradeoffCurve tradeoff_curve(const CurveSeries& fap_series,
                             const CurveSeries& far_series,
                             std::size_t expected_count) {
  if (fap_series.points.size() != far_series.points.size()) {
    throw Error(ErrorCode::kSeriesMismatch, "FAP and FAR series differ in length");
  }
  TradeoffCurve curve;
  curve.subject = fap_series.subject;
  bool marked = false;
  for (std::size_t i = 0; i < fap_series.points.size(); ++i) {
    const SeriesPoint& p = fap_series.points[i];
    const SeriesPoint& r = far_series.points[i];
    if (p.k != r.k) {
      throw Error(ErrorCode::kSeriesMismatch,
                  "FAP and FAR series cover different k values");
    }
    curve.points.push_back({p.k, r.value, p.value});
    if (expected_count > 0 && static_cast<std::size_t>(p.k) == expected_count) {
      curve.markers.push_back({p.k, "k=" + std::to_string(p.k)});
      marked = true;
    }
  }
  if (!marked) {
    curve.warnings.push_back("no marker for '" + curve.subject + "': k=" +
                             std::to_string(expected_count) +
                             " is outside the swept k values");
  }
  return curve;
}

SeriesPoint peak_faf1(const CurveSeries& series) {
  if (series.metric != Metric::kFaf1) {
    throw Error(ErrorCode::kInvalidConfig, "peak_faf1 needs a FAF1 series");
  }
  return saturation_point(series);
}

SeriesPoint saturation_point(const CurveSeries& series) {
  if (series.points.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "series '" + series.subject + "' is empty");
  }
  SeriesPoint best = series.points.front();
  for (const auto& p : series.points) {
    if (p.value > best.value) best = p;
  }
  return best;
}

}  // namespace featalign
