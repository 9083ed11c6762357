#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace featalign {

// A feature label as written by some tool, paired with the key used for
// identity. Two names denote the same feature iff their canonical forms match.
class FeatureName {
 public:
  FeatureName() = default;

  const std::string& raw() const noexcept { return raw_; }
  const std::string& canonical() const noexcept { return canonical_; }

  friend bool operator==(const FeatureName& a, const FeatureName& b) noexcept {
    return a.canonical_ == b.canonical_;
  }

 private:
  friend FeatureName canonicalize(std::string_view raw);
  std::string raw_;
  std::string canonical_;
};

// NFC-normalizes, trims, collapses internal whitespace runs to one space and
// lowercases. Throws Error(kEmptyFeatureName) for empty or blank input.
FeatureName canonicalize(std::string_view raw);

// Canonical form only; convenience for class labels.
std::string canonical_label(std::string_view raw);

enum class RankingRule { kAbsolute, kSigned, kPositiveOnly };

struct Attribution {
  FeatureName feature;
  double score = 0.0;
};

// One instance's explanation. Entries are kept in the order they were
// supplied; ranked() produces the order under a given rule. Records that were
// exported as a pre-ranked list keep their supplied order under every rule.
class RankedAttribution {
 public:
  RankedAttribution(std::string instance_id, std::string true_class,
                    std::optional<std::string> predicted_class,
                    std::vector<Attribution> entries, bool pre_ranked = false);

  const std::string& instance_id() const noexcept { return instance_id_; }
  const std::string& true_class() const noexcept { return true_class_; }
  const std::optional<std::string>& predicted_class() const noexcept {
    return predicted_class_;
  }
  const std::vector<Attribution>& entries() const noexcept { return entries_; }
  std::size_t n_features() const noexcept { return entries_.size(); }
  bool pre_ranked() const noexcept { return pre_ranked_; }

  // Canonical feature names, most influential first. Ties are broken by
  // ascending canonical name. positive_only drops entries with score <= 0.
  std::vector<std::string> ranked(RankingRule rule) const;
  // Same order as ranked(), as indices into entries().
  std::vector<std::size_t> ranked_order(RankingRule rule) const;

  // Structural equality, raw names and exact scores included.
  friend bool operator==(const RankedAttribution& a, const RankedAttribution& b);

 private:
  std::string instance_id_;
  std::string true_class_;
  std::optional<std::string> predicted_class_;
  std::vector<Attribution> entries_;
  bool pre_ranked_ = false;
};

// First min(k, |ranked|) features of e under rule. Throws Error(kInvalidK)
// when k < 1.
std::vector<std::string> top_k(const RankedAttribution& e, int k,
                               RankingRule rule);

class DomainFeatureSet {
 public:
  DomainFeatureSet(std::string class_name, std::vector<std::string> aliases,
                   std::vector<std::string> attack_refs,
                   std::vector<FeatureName> features);

  const std::string& class_name() const noexcept { return class_name_; }
  const std::vector<std::string>& aliases() const noexcept { return aliases_; }
  const std::vector<std::string>& attack_refs() const noexcept {
    return attack_refs_;
  }
  const std::vector<FeatureName>& features() const noexcept {
    return features_;
  }
  std::size_t size() const noexcept { return features_.size(); }
  bool empty() const noexcept { return features_.empty(); }
  bool contains(const std::string& canonical) const {
    return lookup_.count(canonical) != 0;
  }

 private:
  std::string class_name_;
  std::vector<std::string> aliases_;
  std::vector<std::string> attack_refs_;
  std::vector<FeatureName> features_;
  std::unordered_set<std::string> lookup_;
};

class DomainFeatureCatalog {
 public:
  static constexpr int kSupportedVersion = 1;

  DomainFeatureCatalog(int version, std::vector<DomainFeatureSet> classes);

  int version() const noexcept { return version_; }
  const std::vector<DomainFeatureSet>& classes() const noexcept {
    return classes_;
  }

  // Resolves a class label by name or alias, case-insensitively. Returns the
  // index into classes() or nullopt.
  std::optional<std::size_t> find(std::string_view label) const;

 private:
  int version_;
  std::vector<DomainFeatureSet> classes_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class ScopingRule { kCorrectOnly, kTrueClassAll };
enum class EmptySetPolicy { kExcludeFromDataset, kIncludeAsZero };

struct Aggregation {
  enum class Kind { kMean, kMedian, kTrimmed, kWeighted };
  Kind kind = Kind::kMean;
  double alpha = 0.0;  // fraction trimmed per tail, kTrimmed only

  // "mean", "median", "weighted", "trimmed:<alpha>".
  static Aggregation parse(std::string_view text);
  std::string to_string() const;
};

enum class Metric { kFap, kFar, kFaf1 };
enum class Level { kInstance, kClass, kDataset };

inline constexpr unsigned kLevelInstance = 1u << 0;
inline constexpr unsigned kLevelClass = 1u << 1;
inline constexpr unsigned kLevelDataset = 1u << 2;
inline constexpr unsigned kLevelAll = kLevelInstance | kLevelClass | kLevelDataset;

struct EvaluationConfig {
  RankingRule ranking = RankingRule::kAbsolute;
  ScopingRule scoping = ScopingRule::kCorrectOnly;
  std::vector<int> k_values{5, 10, 20, 40};
  Aggregation aggregation;
  EmptySetPolicy empty_set_policy = EmptySetPolicy::kExcludeFromDataset;
  std::vector<std::string> benign_labels{"benign"};
  unsigned levels = kLevelAll;

  // Throws Error(kInvalidConfig) on a broken invariant.
  void validate() const;
  bool is_benign(std::string_view label) const;
};

void validate_k_values(const std::vector<int>& k_values);

// MetricPoint::flags
inline constexpr unsigned kFlagEmptyDomainSet = 1u << 0;
inline constexpr unsigned kFlagDegenerateExplanation = 1u << 1;

struct MetricPoint {
  Metric metric = Metric::kFap;
  Level level = Level::kDataset;
  std::string subject;
  int k = 0;
  double value = 0.0;
  std::size_t support = 0;
  unsigned flags = 0;

  friend bool operator==(const MetricPoint&, const MetricPoint&) = default;
};

struct SeriesPoint {
  int k = 0;
  double value = 0.0;
  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

struct Marker {
  int k = 0;
  std::string label;
  friend bool operator==(const Marker&, const Marker&) = default;
};

struct CurveSeries {
  Metric metric = Metric::kFap;
  Level level = Level::kClass;
  std::string subject;
  std::vector<SeriesPoint> points;  // ascending k, one per k
  std::vector<Marker> markers;
  unsigned flags = 0;
};

std::string_view to_string(RankingRule rule);
std::string_view to_string(ScopingRule rule);
std::string_view to_string(EmptySetPolicy policy);
std::string_view to_string(Metric metric);
std::string_view to_string(Level level);

RankingRule parse_ranking_rule(std::string_view text);
ScopingRule parse_scoping_rule(std::string_view text);
EmptySetPolicy parse_empty_set_policy(std::string_view text);
Metric parse_metric(std::string_view text);
Level parse_level(std::string_view text);

}  // namespace featalign
