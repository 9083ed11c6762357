#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace featalign {

// Counts behind one (instance, k) evaluation: |E(k) ∩ F|, |E(k)| and |F|.
struct InstanceAlignment {
  std::string instance_id;
  std::string class_name;
  int k = 0;
  std::size_t overlap = 0;
  std::size_t explained = 0;
  std::size_t expected = 0;

  // kFlagDegenerateExplanation when explained == 0, kFlagEmptyDomainSet when
  // expected == 0.
  unsigned flags() const noexcept;
};

// Degenerate denominators yield 0 rather than failing; flags() records why.
double fap_instance(const InstanceAlignment& a) noexcept;
double far_instance(const InstanceAlignment& a) noexcept;
double faf1_instance(const InstanceAlignment& a) noexcept;

double instance_metric(Metric metric, const InstanceAlignment& a) noexcept;
double instance_metric(Metric metric, std::size_t overlap, std::size_t explained,
                       std::size_t expected) noexcept;

// Neumaier-compensated sum in the given order.
double compensated_sum(std::span<const double> values) noexcept;

double mean(std::span<const double> values);
double median(std::span<const double> values);
// Drops floor(alpha * n) values from each tail before averaging.
double trimmed_mean(std::span<const double> values, double alpha);

// Aggregates per-instance values of one class into a class-level point.
// `weighted` only has meaning across classes and reduces to the mean here.
// Throws Error(kEmptyClass) when values is empty.
MetricPoint class_level(Metric metric, std::string subject, int k,
                        std::span<const double> values, const Aggregation& agg);

// Aggregates class-level points into the dataset-level point. Points flagged
// kFlagEmptyDomainSet are dropped under kExcludeFromDataset. Throws
// Error(kNoEvaluableClasses) if nothing remains.
MetricPoint dataset_level(std::span<const MetricPoint> class_points,
                          const Aggregation& agg, EmptySetPolicy policy);

// Cumulative overlap of a ranked feature list with f, read off at each k of
// the strictly increasing k_values. One pass over the ranked list.
void cumulative_overlap(std::span<const std::string> ranked,
                        const DomainFeatureSet& f, std::span<const int> k_values,
                        std::span<std::uint32_t> overlap_out,
                        std::span<std::uint32_t> explained_out);

std::vector<InstanceAlignment> alignment_counts(const RankedAttribution& e,
                                                const DomainFeatureSet& f,
                                                std::span<const int> k_values,
                                                RankingRule rule);

}  // namespace featalign
