#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/model.hpp"
#include "tempdir.hpp"

namespace testutil {

inline featalign::RankedAttribution record(
    std::string id, std::string true_class, std::optional<std::string> predicted,
    std::initializer_list<std::pair<const char*, double>> entries) {
  std::vector<featalign::Attribution> out;
  for (const auto& [name, score] : entries) {
    out.push_back({featalign::canonicalize(name), score});
  }
  return featalign::RankedAttribution(std::move(id), std::move(true_class),
                                      std::move(predicted), std::move(out));
}

// Scores n, n-1, ..., 1 so the listed order is the ranking.
inline featalign::RankedAttribution ordered(std::string id, std::string cls,
                                            std::initializer_list<const char*> names) {
  std::vector<featalign::Attribution> out;
  double score = static_cast<double>(names.size());
  for (const char* name : names) out.push_back({featalign::canonicalize(name), score--});
  return featalign::RankedAttribution(std::move(id), cls, cls, std::move(out));
}

inline featalign::DomainFeatureSet domain(std::string name,
                                          std::initializer_list<const char*> features,
                                          std::vector<std::string> aliases = {}) {
  std::vector<featalign::FeatureName> names;
  for (const char* f : features) names.push_back(featalign::canonicalize(f));
  return featalign::DomainFeatureSet(std::move(name), std::move(aliases), {},
                                     std::move(names));
}

}  // namespace testutil
