#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace featalign {

unsigned InstanceAlignment::flags() const noexcept {
  unsigned f = 0;
  if (explained == 0) f |= kFlagDegenerateExplanation;
  if (expected == 0) f |= kFlagEmptyDomainSet;
  return f;
}

double instance_metric(Metric metric, std::size_t overlap, std::size_t explained,
                       std::size_t expected) noexcept {
  switch (metric) {
    case Metric::kFap:
      return explained == 0 ? 0.0
                            : static_cast<double>(overlap) /
                                  static_cast<double>(explained);
    case Metric::kFar:
      return expected == 0 ? 0.0
                           : static_cast<double>(overlap) /
                                 static_cast<double>(expected);
    case Metric::kFaf1:
      return explained + expected == 0
                 ? 0.0
                 : 2.0 * static_cast<double>(overlap) /
                       static_cast<double>(explained + expected);
  }
  return 0.0;
}

double instance_metric(Metric metric, const InstanceAlignment& a) noexcept {
  return instance_metric(metric, a.overlap, a.explained, a.expected);
}

double fap_instance(const InstanceAlignment& a) noexcept {
  return instance_metric(Metric::kFap, a);
}

double far_instance(const InstanceAlignment& a) noexcept {
  return instance_metric(Metric::kFar, a);
}

double faf1_instance(const InstanceAlignment& a) noexcept {
  return instance_metric(Metric::kFaf1, a);
}

double compensated_sum(std::span<const double> values) noexcept {
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

namespace {

void require_non_empty(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptyClass, "cannot aggregate an empty value list");
  }
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

std::size_t trim_count(std::size_t n, double alpha) {
  // Tolerance absorbs products like 0.29 * 100 = 28.999999999999996.
  return static_cast<std::size_t>(
      std::floor(alpha * static_cast<double>(n) + 1e-9));
}

double aggregate(std::span<const double> values, const Aggregation& agg) {
  switch (agg.kind) {
    case Aggregation::Kind::kMean:
    case Aggregation::Kind::kWeighted:
      return mean(values);
    case Aggregation::Kind::kMedian:
      return median(values);
    case Aggregation::Kind::kTrimmed:
      return trimmed_mean(values, agg.alpha);
  }
  return mean(values);
}

}  // namespace

double mean(std::span<const double> values) {
  require_non_empty(values);
  return compensated_sum(values) / static_cast<double>(values.size());
}

double median(std::span<const double> values) {
  require_non_empty(values);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

double trimmed_mean(std::span<const double> values, double alpha) {
  require_non_empty(values);
  if (!(alpha >= 0.0 && alpha < 0.5)) {
    throw Error(ErrorCode::kInvalidConfig, "trimmed fraction must be in [0, 0.5)");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t cut = trim_count(sorted.size(), alpha);
  // alpha < 0.5 leaves at least one value for n >= 1.
  std::span<const double> kept(sorted.data() + cut, sorted.size() - 2 * cut);
  return mean(kept);
}

MetricPoint class_level(Metric metric, std::string subject, int k,
                        std::span<const double> values, const Aggregation& agg) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptyClass,
                "class '" + subject + "' has no scoped instances");
  }
  MetricPoint point;
  point.metric = metric;
  point.level = Level::kClass;
  point.subject = std::move(subject);
  point.k = k;
  point.value = clamp_unit(aggregate(values, agg));
  point.support = values.size();
  return point;
}

MetricPoint dataset_level(std::span<const MetricPoint> class_points,
                          const Aggregation& agg, EmptySetPolicy policy) {
  if (class_points.empty()) {
    throw Error(ErrorCode::kNoEvaluableClasses, "no class-level results to aggregate");
  }
  std::vector<double> values;
  std::vector<double> weighted_terms;
  std::size_t support = 0;
  for (const auto& p : class_points) {
    if (p.metric != class_points.front().metric || p.k != class_points.front().k) {
      throw Error(ErrorCode::kInvalidConfig,
                  "class points disagree on metric or k");
    }
    if ((p.flags & kFlagEmptyDomainSet) != 0 &&
        policy == EmptySetPolicy::kExcludeFromDataset) {
      continue;
    }
    values.push_back(p.value);
    weighted_terms.push_back(p.value * static_cast<double>(p.support));
    support += p.support;
  }
  if (values.empty()) {
    throw Error(ErrorCode::kNoEvaluableClasses,
                "no evaluable classes remain for dataset-level aggregation");
  }

  MetricPoint point;
  point.metric = class_points.front().metric;
  point.level = Level::kDataset;
  point.subject = "dataset";
  point.k = class_points.front().k;
  point.support = support;
  if (agg.kind == Aggregation::Kind::kWeighted) {
    point.value = support == 0 ? 0.0
                               : clamp_unit(compensated_sum(weighted_terms) /
                                            static_cast<double>(support));
  } else {
    point.value = clamp_unit(aggregate(values, agg));
  }
  return point;
}

void cumulative_overlap(std::span<const std::string> ranked,
                        const DomainFeatureSet& f, std::span<const int> k_values,
                        std::span<std::uint32_t> overlap_out,
                        std::span<std::uint32_t> explained_out) {
  std::uint32_t hits = 0;
  std::size_t pos = 0;
  for (std::size_t j = 0; j < k_values.size(); ++j) {
    const std::size_t limit =
        std::min(static_cast<std::size_t>(k_values[j]), ranked.size());
    for (; pos < limit; ++pos) {
      if (f.contains(ranked[pos])) ++hits;
    }
    overlap_out[j] = hits;
    explained_out[j] = static_cast<std::uint32_t>(limit);
  }
}

std::vector<InstanceAlignment> alignment_counts(const RankedAttribution& e,
                                                const DomainFeatureSet& f,
                                                std::span<const int> k_values,
                                                RankingRule rule) {
  const std::vector<std::string> ranked = e.ranked(rule);
  std::vector<std::uint32_t> overlap(k_values.size());
  std::vector<std::uint32_t> explained(k_values.size());
  cumulative_overlap(ranked, f, k_values, overlap, explained);

  std::vector<InstanceAlignment> out;
  out.reserve(k_values.size());
  for (std::size_t j = 0; j < k_values.size(); ++j) {
    out.push_back({e.instance_id(), f.class_name(), k_values[j], overlap[j],
                   explained[j], f.size()});
  }
  return out;
}

}  // namespace featalign
