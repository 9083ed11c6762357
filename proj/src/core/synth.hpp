#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace featalign::synth {

// Deterministic 64-bit generator with portable bounded sampling; std
// distributions are implementation-defined and would break reproducibility
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  double unit();  // [0, 1)

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::uint64_t state_;
};

// Seed for element `index` of a batch, independent of generation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

std::string feature_label(std::size_t index, std::size_t universe);

struct AlignedSample {
  RankedAttribution explanation;
  DomainFeatureSet domain;
};

// Universe of n_features, a domain set of f_set_size, and a ranking whose top
// ceil(alignment * f_set_size) positions are domain features, followed by all
// non-domain features, then the remaining domain features. Scores are
// positive and strictly decreasing. Throws Error(kInvalidSynthSpec).
AlignedSample gen_aligned(std::size_t n_features, std::size_t f_set_size,
                          double alignment, std::uint64_t seed);

struct RandomCorpus {
  std::vector<RankedAttribution> corpus;
  DomainFeatureSet domain;
};

// Uniformly random rankings of a fixed universe against one fixed domain set.
// All instances are labeled (and predicted) as class_name.
RandomCorpus gen_random(std::size_t n_features, std::size_t f_set_size,
                        std::size_t n_instances, std::uint64_t seed,
                        const std::string& class_name = "synthetic");

struct GeneralSample {
  RankedAttribution explanation;
  DomainFeatureSet domain;
};

// Instance and domain set drawn independently from a shared universe of
// universe_size names, so the domain set may name features the instance lacks.
// Scores are signed and coarse so that ties occur.
GeneralSample gen_general(std::size_t n_features, std::size_t f_set_size,
                          std::size_t universe_size, std::uint64_t seed);

// Single-class catalog wrapping a domain set.
DomainFeatureCatalog single_class_catalog(const DomainFeatureSet& domain);

struct OracleResult {
  std::size_t overlap = 0;
  std::size_t explained = 0;
  std::size_t expected = 0;
  double fap = 0.0;
  double far = 0.0;
  double faf1 = 0.0;
};

// Naive recomputation: full sort, explicit sets, nested-scan intersection.
// Shares no code with the metric kernels.
OracleResult oracle_metrics(const RankedAttribution& e, const DomainFeatureSet& f,
                            int k, RankingRule rule = RankingRule::kAbsolute);

}  // namespace featalign::synth
