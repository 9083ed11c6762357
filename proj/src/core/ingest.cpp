#include "core/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include <json.hpp>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace featalign {

using json = nlohmann::json;

void ValidationReport::merge(const ValidationReport& other) {
  errors.insert(errors.end(), other.errors.begin(), other.errors.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

void ValidationReport::sort_warnings() {
  std::stable_sort(warnings.begin(), warnings.end(),
                   [](const Issue& a, const Issue& b) {
                     return std::tie(a.subject, a.code, a.message) <
                            std::tie(b.subject, b.code, b.message);
                   });
}

std::string to_text(const ValidationReport& report) {
  std::ostringstream out;
  for (const auto& e : report.errors) {
    out << "error   [" << e.code << "] " << e.subject << ": " << e.message << "\n";
  }
  for (const auto& w : report.warnings) {
    out << "warning [" << w.code << "] " << w.subject << ": " << w.message << "\n";
  }
  const auto& s = report.stats;
  out << "instances=" << s.instances << " pre_ranked=" << s.pre_ranked_instances
      << " classes=" << s.classes << " features=" << s.features
      << " catalog_classes=" << s.catalog_classes
      << " catalog_features=" << s.catalog_features
      << " unmatched_catalog_features=" << s.unmatched_catalog_features
      << " empty_domain_classes=" << s.empty_domain_classes << "\n";
  out << (report.ok() ? "status: ok" : "status: invalid") << " ("
      << report.errors.size() << " errors, " << report.warnings.size()
      << " warnings)\n";
  return out.str();
}

namespace {

struct LineResult {
  std::optional<RankedAttribution> record;
  std::vector<Issue> errors;
};

std::string line_locator(std::size_t line_no) {
  return "line " + std::to_string(line_no);
}

std::optional<std::string> string_field(const json& obj, const char* key,
                                        const std::string& where,
                                        std::vector<Issue>& errors,
                                        bool required) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    if (required) {
      errors.push_back({"MissingField", where, std::string("missing '") + key + "'"});
    }
    return std::nullopt;
  }
  if (!it->is_string()) {
    errors.push_back({"ParseError", where, std::string("'") + key + "' must be a string"});
    return std::nullopt;
  }
  return it->get<std::string>();
}

LineResult parse_record(std::string_view line, std::size_t line_no,
                        const LoadOptions& options) {
  LineResult result;
  const std::string where = line_locator(line_no);
  auto fail = [&](std::string code, std::string message) {
    result.errors.push_back({std::move(code), where, std::move(message)});
    return std::move(result);
  };

  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::out_of_range&) {
    return fail("NonFiniteScore", "number does not fit a double");
  } catch (const json::exception& e) {
    return fail("ParseError", e.what());
  }
  if (!doc.is_object()) return fail("ParseError", "record must be a JSON object");

  auto id = string_field(doc, "id", where, result.errors, true);
  auto true_class = string_field(doc, "true_class", where, result.errors, true);
  auto predicted = string_field(doc, "predicted_class", where, result.errors, false);
  if (!result.errors.empty()) return result;
  if (!predicted && options.require_predicted_class) {
    return fail("MissingPredictedClass",
                "record '" + *id + "' has no predicted_class (required by correct_only scope)");
  }

  const bool has_scores = doc.contains("attributions");
  const bool has_ranked = doc.contains("ranked_features");
  if (has_scores && has_ranked) {
    return fail("ParseError", "record has both 'attributions' and 'ranked_features'");
  }
  if (!has_scores && !has_ranked) {
    return fail("MissingScore", "record has neither 'attributions' nor 'ranked_features'");
  }

  std::vector<Attribution> entries;
  std::unordered_set<std::string> seen;
  auto add = [&](const std::string& raw, double score) -> bool {
    Attribution a;
    try {
      a.feature = canonicalize(raw);
    } catch (const Error&) {
      result.errors.push_back({"EmptyFeatureName", where, "feature name is empty"});
      return false;
    }
    if (!seen.insert(a.feature.canonical()).second) {
      result.errors.push_back({"DuplicateFeature", where,
                               "feature '" + raw + "' duplicates canonical name '" +
                                   a.feature.canonical() + "'"});
      return false;
    }
    a.score = score;
    entries.push_back(std::move(a));
    return true;
  };

  if (has_scores) {
    const json& list = doc["attributions"];
    if (!list.is_array()) return fail("ParseError", "'attributions' must be an array");
    for (const json& item : list) {
      if (!item.is_object() || !item.contains("feature") || !item["feature"].is_string()) {
        return fail("ParseError", "attribution entries need a string 'feature'");
      }
      const std::string raw = item["feature"].get<std::string>();
      auto v = item.find("value");
      if (v == item.end() || v->is_null()) {
        return fail("MissingScore", "attribution for '" + raw + "' has no value");
      }
      if (!v->is_number()) return fail("ParseError", "value for '" + raw + "' is not a number");
      const double score = v->get<double>();
      if (!std::isfinite(score)) {
        return fail("NonFiniteScore", "value for '" + raw + "' is not finite");
      }
      if (!add(raw, score)) return result;
    }
  } else {
    const json& list = doc["ranked_features"];
    if (!list.is_array()) return fail("ParseError", "'ranked_features' must be an array");
    for (const json& item : list) {
      if (!item.is_string()) return fail("ParseError", "ranked_features must hold strings");
      if (!add(item.get<std::string>(), 0.0)) return result;
    }
  }

  result.record.emplace(std::move(*id), std::move(*true_class), std::move(predicted),
                        std::move(entries), has_ranked);
  return result;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  });
}

std::string slurp(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

LoadedExplanations load_explanations(std::string_view text,
                                     const LoadOptions& options) {
  struct Line {
    std::string_view text;
    std::size_t number;
  };
  std::vector<Line> lines;
  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    if (!is_blank(line)) lines.push_back({line, line_no});
    pos = end + 1;
  }

  LoadedExplanations out;
  if (lines.empty()) {
    out.report.errors.push_back({"EmptyInput", "explanations", "no records found"});
    return out;
  }

  std::vector<LineResult> parsed(lines.size());
  parallel_for(lines.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      parsed[i] = parse_record(lines[i].text, lines[i].number, options);
    }
  });

  std::map<std::string, std::size_t> first_seen;
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    auto& r = parsed[i];
    out.report.errors.insert(out.report.errors.end(), r.errors.begin(), r.errors.end());
    if (!r.record) continue;
    auto [it, inserted] = first_seen.emplace(r.record->instance_id(), lines[i].number);
    if (!inserted) {
      out.report.errors.push_back(
          {"DuplicateInstance", line_locator(lines[i].number),
           "instance id '" + r.record->instance_id() + "' already used on line " +
               std::to_string(it->second)});
      continue;
    }
    out.corpus.push_back(std::move(*r.record));
  }

  auto& stats = out.report.stats;
  stats.instances = out.corpus.size();
  std::unordered_set<std::string> features;
  for (const auto& e : out.corpus) {
    if (e.pre_ranked()) ++stats.pre_ranked_instances;
    for (const auto& a : e.entries()) features.insert(a.feature.canonical());
  }
  stats.features = features.size();
  if (stats.pre_ranked_instances > 0) {
    out.report.warnings.push_back(
        {"PreRankedRecords", "explanations",
         std::to_string(stats.pre_ranked_instances) +
             " records carry a pre-ranked list; the ranking rule is ignored for them"});
  }
  if (!out.report.ok()) out.corpus.clear();
  return out;
}

LoadedExplanations load_explanations(std::istream& in, const LoadOptions& options) {
  return load_explanations(slurp(in), options);
}

LoadedCatalog load_catalog(std::string_view text) {
  LoadedCatalog out;
  auto& errors = out.report.errors;
  auto& warnings = out.report.warnings;

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    errors.push_back({"ParseError", "catalog", e.what()});
    return out;
  }
  if (!doc.is_object()) {
    errors.push_back({"ParseError", "catalog", "catalog must be a JSON object"});
    return out;
  }
  auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer() ||
      version->get<long long>() != DomainFeatureCatalog::kSupportedVersion) {
    errors.push_back({"UnsupportedVersion", "catalog",
                      "expected version " +
                          std::to_string(DomainFeatureCatalog::kSupportedVersion) +
                          ", got " + (version == doc.end() ? "none" : version->dump())});
    return out;
  }
  auto classes = doc.find("classes");
  if (classes == doc.end() || !classes->is_array()) {
    errors.push_back({"ParseError", "catalog", "'classes' must be an array"});
    return out;
  }

  auto string_list = [&](const json& obj, const char* key, const std::string& where,
                         std::vector<std::string>& dest) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return true;
    if (!it->is_array()) {
      errors.push_back({"ParseError", where, std::string("'") + key + "' must be an array"});
      return false;
    }
    for (const json& v : *it) {
      if (!v.is_string()) {
        errors.push_back({"ParseError", where, std::string("'") + key + "' must hold strings"});
        return false;
      }
      dest.push_back(v.get<std::string>());
    }
    return true;
  };

  std::vector<DomainFeatureSet> sets;
  std::map<std::string, std::pair<std::string, bool>> labels;  // canonical -> (owner, is_name)
  for (std::size_t i = 0; i < classes->size(); ++i) {
    const json& c = (*classes)[i];
    std::string where = "classes[" + std::to_string(i) + "]";
    if (!c.is_object() || !c.contains("name") || !c["name"].is_string()) {
      errors.push_back({"ParseError", where, "class needs a string 'name'"});
      continue;
    }
    const std::string name = c["name"].get<std::string>();
    where = "class " + name;
    std::vector<std::string> aliases, refs, feature_names;
    if (!string_list(c, "aliases", where, aliases) ||
        !string_list(c, "attack_refs", where, refs)) {
      continue;
    }
    if (!c.contains("features")) {
      errors.push_back({"ParseError", where, "missing 'features'"});
      continue;
    }
    if (!string_list(c, "features", where, feature_names)) continue;

    bool class_ok = true;
    auto claim = [&](const std::string& label, bool is_name) {
      std::string key;
      try {
        key = canonical_label(label);
      } catch (const Error&) {
        errors.push_back({"EmptyClassName", where, "class name or alias is empty"});
        class_ok = false;
        return;
      }
      auto [it, inserted] = labels.emplace(key, std::make_pair(name, is_name));
      if (inserted) return;
      if (it->second.first == name && it->second.second == is_name && !is_name) {
        return;  // same alias repeated within one class
      }
      const bool both_names = is_name && it->second.second;
      errors.push_back({both_names ? "DuplicateClass" : "AliasCollision", where,
                        "label '" + label + "' already used by class '" +
                            it->second.first + "'"});
      class_ok = false;
    };
    claim(name, true);
    for (const auto& a : aliases) claim(a, false);

    std::vector<FeatureName> features;
    std::unordered_set<std::string> seen;
    for (const auto& raw : feature_names) {
      try {
        FeatureName f = canonicalize(raw);
        if (!seen.insert(f.canonical()).second) {
          errors.push_back({"DuplicateFeature", where,
                            "feature '" + raw + "' listed twice"});
          class_ok = false;
          continue;
        }
        features.push_back(std::move(f));
      } catch (const Error&) {
        errors.push_back({"EmptyFeatureName", where, "feature name is empty"});
        class_ok = false;
      }
    }
    if (!class_ok) continue;
    if (features.empty()) {
      warnings.push_back({"EmptyDomainSet", name,
                          "class has no domain features; FAR and FAF1 are always 0"});
    }
    sets.emplace_back(name, std::move(aliases), std::move(refs), std::move(features));
  }

  out.report.stats.catalog_classes = sets.size();
  for (const auto& s : sets) {
    out.report.stats.catalog_features += s.size();
    if (s.empty()) ++out.report.stats.empty_domain_classes;
  }
  out.report.sort_warnings();
  if (errors.empty()) {
    out.catalog.emplace(DomainFeatureCatalog::kSupportedVersion, std::move(sets));
  }
  return out;
}

LoadedCatalog load_catalog(std::istream& in) { return load_catalog(slurp(in)); }

std::string serialize_explanation(const RankedAttribution& e) {
  json doc = json::object();
  doc["id"] = e.instance_id();
  doc["true_class"] = e.true_class();
  if (e.predicted_class()) doc["predicted_class"] = *e.predicted_class();
  if (e.pre_ranked()) {
    json list = json::array();
    for (const auto& a : e.entries()) list.push_back(a.feature.raw());
    doc["ranked_features"] = std::move(list);
  } else {
    json list = json::array();
    for (const auto& a : e.entries()) {
      list.push_back({{"feature", a.feature.raw()}, {"value", a.score}});
    }
    doc["attributions"] = std::move(list);
  }
  return doc.dump();
}

std::string serialize_catalog(const DomainFeatureCatalog& catalog) {
  json classes = json::array();
  for (const auto& c : catalog.classes()) {
    json features = json::array();
    for (const auto& f : c.features()) features.push_back(f.raw());
    classes.push_back({{"name", c.class_name()},
                       {"aliases", c.aliases()},
                       {"attack_refs", c.attack_refs()},
                       {"features", std::move(features)}});
  }
  json doc = {{"version", catalog.version()}, {"classes", std::move(classes)}};
  return doc.dump(2) + "\n";
}

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::kMisclassified: return "Misclassified";
    case DropReason::kUnmappedClass: return "UnmappedClass";
    case DropReason::kMissingPrediction: return "MissingPrediction";
  }
  return "Unknown";
}

std::size_t EvaluationScope::scoped_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.instances.size();
  return n;
}

EvaluationScope build_scope(std::span<const RankedAttribution> corpus,
                            const DomainFeatureCatalog& catalog,
                            const EvaluationConfig& config) {
  EvaluationScope scope;
  scope.classes.reserve(catalog.classes().size());
  for (std::size_t i = 0; i < catalog.classes().size(); ++i) {
    scope.classes.push_back({i, catalog.classes()[i].class_name(), {}});
  }

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const RankedAttribution& e = corpus[i];
    if (config.is_benign(e.true_class())) {
      scope.benign.push_back(e.instance_id());
      continue;
    }
    const auto cls = catalog.find(e.true_class());
    if (!cls) {
      scope.dropped.push_back({e.instance_id(), DropReason::kUnmappedClass});
      continue;
    }
    if (config.scoping == ScopingRule::kCorrectOnly) {
      if (!e.predicted_class()) {
        scope.dropped.push_back({e.instance_id(), DropReason::kMissingPrediction});
        continue;
      }
      const auto predicted = catalog.find(*e.predicted_class());
      if (predicted != cls) {
        scope.dropped.push_back({e.instance_id(), DropReason::kMisclassified});
        continue;
      }
    }
    scope.classes[*cls].instances.push_back(i);
  }

  for (auto& c : scope.classes) {
    std::sort(c.instances.begin(), c.instances.end(),
              [&](std::size_t a, std::size_t b) {
                return corpus[a].instance_id() < corpus[b].instance_id();
              });
  }
  return scope;
}

ValidationReport cross_validate(std::span<const RankedAttribution> corpus,
                                const DomainFeatureCatalog& catalog,
                                const EvaluationConfig& config) {
  ValidationReport report;
  std::unordered_set<std::string> features;
  std::set<std::string> unmapped;
  std::set<std::string> attack_classes;
  for (const auto& e : corpus) {
    for (const auto& a : e.entries()) features.insert(a.feature.canonical());
    if (config.is_benign(e.true_class())) continue;
    attack_classes.insert(canonical_label(e.true_class()));
    if (!catalog.find(e.true_class())) unmapped.insert(e.true_class());
  }

  for (const auto& c : catalog.classes()) {
    for (const auto& f : c.features()) {
      if (features.count(f.canonical()) == 0) {
        ++report.stats.unmatched_catalog_features;
        report.warnings.push_back({"UnmatchedCatalogFeature",
                                   c.class_name() + ": " + f.raw(),
                                   "catalog feature does not occur in any explanation"});
      }
    }
    // EmptyDomainSet is already reported by load_catalog.
    if (c.empty()) ++report.stats.empty_domain_classes;
    report.stats.catalog_features += c.size();
  }
  for (const auto& label : unmapped) {
    report.warnings.push_back(
        {"UnmappedClass", label, "explanation class has no catalog entry"});
  }

  report.stats.instances = corpus.size();
  for (const auto& e : corpus) {
    if (e.pre_ranked()) ++report.stats.pre_ranked_instances;
  }
  report.stats.classes = attack_classes.size();
  report.stats.features = features.size();
  report.stats.catalog_classes = catalog.classes().size();
  report.sort_warnings();
  return report;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading '" + path + "'");
  return buf.str();
}

}  // namespace featalign
