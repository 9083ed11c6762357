#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/model.hpp"

namespace featalign {

struct Issue {
  std::string code;     // e.g. "DuplicateInstance", "EmptyDomainSet"
  std::string subject;  // record locator ("line 7") or affected entity
  std::string message;

  friend bool operator==(const Issue&, const Issue&) = default;
};

struct ValidationStats {
  std::size_t instances = 0;
  std::size_t pre_ranked_instances = 0;
  std::size_t classes = 0;  // distinct non-benign true classes in the corpus
  std::size_t features = 0;  // distinct canonical feature names in the corpus
  std::size_t catalog_classes = 0;
  std::size_t catalog_features = 0;
  std::size_t unmatched_catalog_features = 0;
  std::size_t empty_domain_classes = 0;
};

// Errors block evaluation; warnings never do.
struct ValidationReport {
  std::vector<Issue> errors;
  std::vector<Issue> warnings;
  ValidationStats stats;

  bool ok() const noexcept { return errors.empty(); }
  void merge(const ValidationReport& other);
  // Sorts warnings by subject, then code, then message.
  void sort_warnings();
};

std::string to_text(const ValidationReport& report);

struct LoadOptions {
  // Records without predicted_class are errors when set (correct_only scope).
  bool require_predicted_class = true;
};

struct LoadedExplanations {
  std::vector<RankedAttribution> corpus;
  ValidationReport report;
};

// Parses the line-delimited interchange format. Problems are collected into
// the report with their line number; a report with errors carries no corpus.
LoadedExplanations load_explanations(std::string_view text,
                                     const LoadOptions& options = {});
LoadedExplanations load_explanations(std::istream& in,
                                     const LoadOptions& options = {});

struct LoadedCatalog {
  std::optional<DomainFeatureCatalog> catalog;
  ValidationReport report;
};

LoadedCatalog load_catalog(std::string_view text);
LoadedCatalog load_catalog(std::istream& in);

// One interchange line (no trailing newline).
std::string serialize_explanation(const RankedAttribution& e);
std::string serialize_catalog(const DomainFeatureCatalog& catalog);

enum class DropReason { kMisclassified, kUnmappedClass, kMissingPrediction };
std::string_view to_string(DropReason reason);

struct ClassScope {
  std::size_t catalog_index = 0;
  std::string class_name;
  std::vector<std::size_t> instances;  // corpus indices, sorted by instance id
};

struct DroppedInstance {
  std::string instance_id;
  DropReason reason;
};

struct EvaluationScope {
  std::vector<ClassScope> classes;  // one per catalog class, catalog order
  std::vector<std::string> benign;  // instance ids, input order
  std::vector<DroppedInstance> dropped;

  std::size_t scoped_count() const noexcept;
};

EvaluationScope build_scope(std::span<const RankedAttribution> corpus,
                            const DomainFeatureCatalog& catalog,
                            const EvaluationConfig& config);

// Warnings for catalog features absent from every explanation and for
// explanation classes the catalog does not cover, plus coverage statistics.
ValidationReport cross_validate(std::span<const RankedAttribution> corpus,
                                const DomainFeatureCatalog& catalog,
                                const EvaluationConfig& config = {});

// Throws Error(kIo) if the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace featalign
