#include "core/model.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <charconv>
#include <cmath>

#include "core/error.hpp"

namespace featalign {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyFeatureName: return "EmptyFeatureName";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kNoEvaluableClasses: return "NoEvaluableClasses";
    case ErrorCode::kSeriesMismatch: return "SeriesMismatch";
    case ErrorCode::kIncompleteResults: return "IncompleteResults";
    case ErrorCode::kInvalidSynthSpec: return "InvalidSynthSpec";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || (c >= '\t' && c <= '\r');
}

std::string canonicalize_ascii(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_ascii_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* instance = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || instance == nullptr) {
    throw Error(ErrorCode::kParse, "ICU NFC normalizer unavailable");
  }
  return *instance;
}

icu::UnicodeString normalize(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc().normalize(s, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kParse, "Unicode normalization failed");
  }
  return out;
}

std::string canonicalize_unicode(std::string_view raw) {
  icu::UnicodeString text = normalize(icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size()))));

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < text.length();) {
    UChar32 cp = text.char32At(i);
    i += U16_LENGTH(cp);
    if (u_isUWhiteSpace(cp)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) {
      collapsed.append(static_cast<UChar>(' '));
      pending_space = false;
    }
    collapsed.append(cp);
  }
  collapsed.toLower(icu::Locale::getRoot());
  // Lowercasing can produce sequences that are not composed.
  collapsed = normalize(collapsed);

  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

}  // namespace

FeatureName canonicalize(std::string_view raw) {
  const bool ascii = std::all_of(raw.begin(), raw.end(), [](char c) {
    return static_cast<unsigned char>(c) < 0x80;
  });
  FeatureName name;
  name.raw_ = std::string(raw);
  name.canonical_ = ascii ? canonicalize_ascii(raw) : canonicalize_unicode(raw);
  if (name.canonical_.empty()) {
    throw Error(ErrorCode::kEmptyFeatureName,
                "feature name is empty or whitespace");
  }
  return name;
}

std::string canonical_label(std::string_view raw) {
  return canonicalize(raw).canonical();
}

RankedAttribution::RankedAttribution(std::string instance_id,
                                     std::string true_class,
                                     std::optional<std::string> predicted_class,
                                     std::vector<Attribution> entries,
                                     bool pre_ranked)
    : instance_id_(std::move(instance_id)),
      true_class_(std::move(true_class)),
      predicted_class_(std::move(predicted_class)),
      entries_(std::move(entries)),
      pre_ranked_(pre_ranked) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(entries_.size());
  for (const auto& entry : entries_) {
    if (!seen.insert(entry.feature.canonical()).second) {
      throw Error(ErrorCode::kParse, "duplicate feature '" +
                                         entry.feature.canonical() +
                                         "' in instance " + instance_id_);
    }
  }
}

std::vector<std::size_t> RankedAttribution::ranked_order(RankingRule rule) const {
  std::vector<std::size_t> order;
  order.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!pre_ranked_ && rule == RankingRule::kPositiveOnly &&
        !(entries_[i].score > 0.0)) {
      continue;
    }
    order.push_back(i);
  }
  if (pre_ranked_) return order;

  auto key = [&](std::size_t i) {
    const double s = entries_[i].score;
    return rule == RankingRule::kAbsolute ? std::fabs(s) : s;
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ka = key(a);
    const double kb = key(b);
    if (ka != kb) return ka > kb;
    return entries_[a].feature.canonical() < entries_[b].feature.canonical();
  });
  return order;
}

std::vector<std::string> RankedAttribution::ranked(RankingRule rule) const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (std::size_t i : ranked_order(rule)) {
    out.push_back(entries_[i].feature.canonical());
  }
  return out;
}

bool operator==(const RankedAttribution& a, const RankedAttribution& b) {
  if (a.instance_id_ != b.instance_id_ || a.true_class_ != b.true_class_ ||
      a.predicted_class_ != b.predicted_class_ || a.pre_ranked_ != b.pre_ranked_ ||
      a.entries_.size() != b.entries_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.feature.raw() != y.feature.raw() || x.score != y.score) return false;
  }
  return true;
}

std::vector<std::string> top_k(const RankedAttribution& e, int k,
                               RankingRule rule) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidK, "k must be >= 1, got " + std::to_string(k));
  }
  std::vector<std::string> ranked = e.ranked(rule);
  if (ranked.size() > static_cast<std::size_t>(k)) ranked.resize(k);
  return ranked;
}

DomainFeatureSet::DomainFeatureSet(std::string class_name,
                                   std::vector<std::string> aliases,
                                   std::vector<std::string> attack_refs,
                                   std::vector<FeatureName> features)
    : class_name_(std::move(class_name)),
      aliases_(std::move(aliases)),
      attack_refs_(std::move(attack_refs)),
      features_(std::move(features)) {
  lookup_.reserve(features_.size());
  for (const auto& f : features_) {
    if (!lookup_.insert(f.canonical()).second) {
      throw Error(ErrorCode::kParse, "duplicate feature '" + f.canonical() +
                                         "' in class " + class_name_);
    }
  }
}

DomainFeatureCatalog::DomainFeatureCatalog(int version,
                                           std::vector<DomainFeatureSet> classes)
    : version_(version), classes_(std::move(classes)) {
  if (version_ != kSupportedVersion) {
    throw Error(ErrorCode::kParse,
                "unsupported catalog version " + std::to_string(version_));
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    std::vector<std::string> labels{classes_[i].class_name()};
    labels.insert(labels.end(), classes_[i].aliases().begin(),
                  classes_[i].aliases().end());
    for (const auto& label : labels) {
      auto [it, inserted] = index_.emplace(canonical_label(label), i);
      if (!inserted && it->second != i) {
        throw Error(ErrorCode::kParse, "class label '" + label +
                                           "' is used by more than one class");
      }
    }
  }
}

std::optional<std::size_t> DomainFeatureCatalog::find(
    std::string_view label) const {
  std::string key;
  try {
    key = canonical_label(label);
  } catch (const Error&) {
    return std::nullopt;
  }
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Aggregation Aggregation::parse(std::string_view text) {
  Aggregation agg;
  if (text == "mean") return agg;
  if (text == "median") {
    agg.kind = Kind::kMedian;
    return agg;
  }
  if (text == "weighted") {
    agg.kind = Kind::kWeighted;
    return agg;
  }
  constexpr std::string_view kTrimmed = "trimmed:";
  if (text.substr(0, kTrimmed.size()) == kTrimmed) {
    std::string_view num = text.substr(kTrimmed.size());
    double alpha = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), alpha);
    if (ec != std::errc() || ptr != num.data() + num.size() || num.empty()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "bad trimmed fraction '" + std::string(num) + "'");
    }
    agg.kind = Kind::kTrimmed;
    agg.alpha = alpha;
    if (!(alpha >= 0.0 && alpha < 0.5)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "trimmed fraction must be in [0, 0.5), got " + std::string(num));
    }
    return agg;
  }
  throw Error(ErrorCode::kInvalidConfig,
              "unknown aggregation '" + std::string(text) + "'");
}

std::string Aggregation::to_string() const {
  switch (kind) {
    case Kind::kMean: return "mean";
    case Kind::kMedian: return "median";
    case Kind::kWeighted: return "weighted";
    case Kind::kTrimmed: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof(buf), alpha);
      return "trimmed:" + std::string(buf, res.ptr);
    }
  }
  return "mean";
}

void validate_k_values(const std::vector<int>& k_values) {
  if (k_values.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "k list is empty");
  }
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (k_values[i] < 1) {
      throw Error(ErrorCode::kInvalidK,
                  "k must be >= 1, got " + std::to_string(k_values[i]));
    }
    if (i > 0 && k_values[i] <= k_values[i - 1]) {
      throw Error(ErrorCode::kInvalidConfig, "k values must be strictly increasing");
    }
  }
}

void EvaluationConfig::validate() const {
  validate_k_values(k_values);
  if (aggregation.kind == Aggregation::Kind::kTrimmed &&
      !(aggregation.alpha >= 0.0 && aggregation.alpha < 0.5)) {
    throw Error(ErrorCode::kInvalidConfig, "trimmed fraction must be in [0, 0.5)");
  }
  if ((levels & kLevelAll) == 0 || (levels & ~kLevelAll) != 0) {
    throw Error(ErrorCode::kInvalidConfig, "no valid evaluation level selected");
  }
}

bool EvaluationConfig::is_benign(std::string_view label) const {
  std::string key;
  try {
    key = canonical_label(label);
  } catch (const Error&) {
    return false;
  }
  return std::any_of(benign_labels.begin(), benign_labels.end(),
                     [&](const std::string& b) {
                       try {
                         return canonical_label(b) == key;
                       } catch (const Error&) {
                         return false;
                       }
                     });
}

std::string_view to_string(RankingRule rule) {
  switch (rule) {
    case RankingRule::kAbsolute: return "absolute";
    case RankingRule::kSigned: return "signed";
    case RankingRule::kPositiveOnly: return "positive_only";
  }
  return "absolute";
}

std::string_view to_string(ScopingRule rule) {
  return rule == ScopingRule::kCorrectOnly ? "correct_only" : "true_class_all";
}

std::string_view to_string(EmptySetPolicy policy) {
  return policy == EmptySetPolicy::kExcludeFromDataset ? "exclude_from_dataset"
                                                       : "include_as_zero";
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kFap: return "FAP";
    case Metric::kFar: return "FAR";
    case Metric::kFaf1: return "FAF1";
  }
  return "FAP";
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::kInstance: return "instance";
    case Level::kClass: return "class";
    case Level::kDataset: return "dataset";
  }
  return "dataset";
}

namespace {

// Accepts both snake_case and kebab-case spellings.
std::string normalize_token(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == '-') c = '_';
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

RankingRule parse_ranking_rule(std::string_view text) {
  const std::string t = normalize_token(text);
  if (t == "absolute") return RankingRule::kAbsolute;
  if (t == "signed") return RankingRule::kSigned;
  if (t == "positive_only") return RankingRule::kPositiveOnly;
  throw Error(ErrorCode::kInvalidConfig, "unknown ranking rule '" + std::string(text) + "'");
}

ScopingRule parse_scoping_rule(std::string_view text) {
  const std::string t = normalize_token(text);
  if (t == "correct_only") return ScopingRule::kCorrectOnly;
  if (t == "true_class_all") return ScopingRule::kTrueClassAll;
  throw Error(ErrorCode::kInvalidConfig, "unknown scope '" + std::string(text) + "'");
}

EmptySetPolicy parse_empty_set_policy(std::string_view text) {
  const std::string t = normalize_token(text);
  if (t == "exclude" || t == "exclude_from_dataset") {
    return EmptySetPolicy::kExcludeFromDataset;
  }
  if (t == "include_as_zero") return EmptySetPolicy::kIncludeAsZero;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown empty-set policy '" + std::string(text) + "'");
}

Metric parse_metric(std::string_view text) {
  const std::string t = normalize_token(text);
  if (t == "fap") return Metric::kFap;
  if (t == "far") return Metric::kFar;
  if (t == "faf1") return Metric::kFaf1;
  throw Error(ErrorCode::kParse, "unknown metric '" + std::string(text) + "'");
}

Level parse_level(std::string_view text) {
  const std::string t = normalize_token(text);
  if (t == "instance") return Level::kInstance;
  if (t == "class") return Level::kClass;
  if (t == "dataset") return Level::kDataset;
  throw Error(ErrorCode::kParse, "unknown level '" + std::string(text) + "'");
}

}  // namespace featalign
