#include "featalign/featalign.h"

#include <filesystem>
#include <fstream>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/error.hpp"
#include "core/ingest.hpp"
#include "core/report.hpp"
#include "core/sweep.hpp"
#include "core/synth.hpp"

namespace fa = featalign;

struct fa_config {
  fa::EvaluationConfig config;
};

struct fa_corpus {
  std::vector<fa::RankedAttribution> corpus;
  fa::ValidationReport report;
};

struct fa_catalog {
  fa::DomainFeatureCatalog catalog;
  fa::ValidationReport report;
};

struct fa_report {
  fa::ValidationReport report;
};

struct fa_buffer {
  std::string data;
};

struct fa_evaluation {
  fa::DomainFeatureCatalog catalog;
  fa::EvaluationConfig config;
  std::vector<fa::ModelResult> models;
  std::vector<std::pair<std::size_t, std::size_t>> index;  // (model, point)
};

struct fa_sweep {
  fa::DomainFeatureCatalog catalog;
  fa::EvaluationConfig config;
  fa::KRange range;
  std::vector<fa::ModelSweep> sweeps;
  std::vector<std::pair<std::size_t, std::size_t>> index;  // (model, series)
  std::vector<std::string> warnings;
};

namespace {

thread_local std::string g_last_error;

fa_status status_for(fa::ErrorCode code) {
  switch (code) {
    case fa::ErrorCode::kIo: return FA_ERR_IO;
    case fa::ErrorCode::kParse: return FA_ERR_VALIDATION;
    case fa::ErrorCode::kNoEvaluableClasses: return FA_ERR_NO_EVALUABLE_CLASSES;
    case fa::ErrorCode::kIncompleteResults: return FA_ERR_INCOMPLETE_RESULTS;
    case fa::ErrorCode::kSeriesMismatch: return FA_ERR_SERIES_MISMATCH;
    case fa::ErrorCode::kEmptyFeatureName:
    case fa::ErrorCode::kInvalidK:
    case fa::ErrorCode::kInvalidConfig:
    case fa::ErrorCode::kEmptyClass:
    case fa::ErrorCode::kInvalidSynthSpec:
      return FA_ERR_INVALID_ARGUMENT;
  }
  return FA_ERR_INTERNAL;
}

fa_status fail(fa_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
fa_status guard(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const fa::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FA_ERR_INTERNAL, "unknown error");
  }
}

#define FA_REQUIRE(cond, what)                                   \
  do {                                                           \
    if (!(cond)) return fail(FA_ERR_INVALID_ARGUMENT, (what));   \
  } while (0)

fa_buffer* make_buffer(std::string data) { return new fa_buffer{std::move(data)}; }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

fa::LoadOptions load_options(const fa_config* config) {
  fa::LoadOptions options;
  const fa::ScopingRule scope =
      config != nullptr ? config->config.scoping : fa::ScopingRule::kCorrectOnly;
  options.require_predicted_class = scope == fa::ScopingRule::kCorrectOnly;
  return options;
}

fa_status load_corpus(std::string_view text, const fa_config* config, fa_corpus** out,
                      fa_report** report) {
  *out = nullptr;
  if (report) *report = nullptr;
  fa::LoadedExplanations loaded = fa::load_explanations(text, load_options(config));
  if (report) *report = new fa_report{loaded.report};
  if (!loaded.report.ok()) {
    return fail(FA_ERR_VALIDATION, "explanations failed validation (" +
                                       std::to_string(loaded.report.errors.size()) +
                                       " errors); first: " +
                                       loaded.report.errors.front().subject + ": " +
                                       loaded.report.errors.front().message);
  }
  *out = new fa_corpus{std::move(loaded.corpus), std::move(loaded.report)};
  return FA_OK;
}

fa_status load_catalog(std::string_view text, fa_catalog** out, fa_report** report) {
  *out = nullptr;
  if (report) *report = nullptr;
  fa::LoadedCatalog loaded = fa::load_catalog(text);
  if (report) *report = new fa_report{loaded.report};
  if (!loaded.catalog) {
    return fail(FA_ERR_VALIDATION, "catalog failed validation (" +
                                       std::to_string(loaded.report.errors.size()) +
                                       " errors); first: " +
                                       loaded.report.errors.front().subject + ": " +
                                       loaded.report.errors.front().message);
  }
  *out = new fa_catalog{std::move(*loaded.catalog), std::move(loaded.report)};
  return FA_OK;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw fa::Error(fa::ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw fa::Error(fa::ErrorCode::kIo, "error writing '" + path.string() + "'");
}

void make_dirs(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw fa::Error(fa::ErrorCode::kIo,
                    "cannot create '" + dir.string() + "': " + ec.message());
  }
}

bool model_exists(const std::vector<std::string>& names, const std::string& name) {
  for (const auto& n : names) {
    if (n == name) return true;
  }
  return false;
}

std::string serialize_corpus(const std::vector<fa::RankedAttribution>& corpus) {
  std::string out;
  for (const auto& e : corpus) out += fa::serialize_explanation(e) + "\n";
  return out;
}

}  // namespace

extern "C" {

const char* fa_version(void) { return "1.0.0"; }

const char* fa_last_error(void) { return g_last_error.c_str(); }

const char* fa_status_name(fa_status status) {
  switch (status) {
    case FA_OK: return "ok";
    case FA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FA_ERR_IO: return "i/o error";
    case FA_ERR_VALIDATION: return "validation failed";
    case FA_ERR_NO_EVALUABLE_CLASSES: return "no evaluable classes";
    case FA_ERR_INCOMPLETE_RESULTS: return "incomplete results";
    case FA_ERR_SERIES_MISMATCH: return "series mismatch";
    case FA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fa_buffer_data(const fa_buffer* buffer) {
  return buffer ? buffer->data.data() : nullptr;
}

size_t fa_buffer_size(const fa_buffer* buffer) { return buffer ? buffer->data.size() : 0; }

void fa_buffer_destroy(fa_buffer* buffer) { delete buffer; }

// ---------------------------------------------------------------------------
// config

fa_status fa_config_create(fa_config** out) {
  return guard([&] {
    FA_REQUIRE(out, "null output pointer");
    *out = new fa_config{};
    return FA_OK;
  });
}

void fa_config_destroy(fa_config* config) { delete config; }

fa_status fa_config_set_ranking(fa_config* config, const char* rule) {
  return guard([&] {
    FA_REQUIRE(config && rule, "null argument");
    config->config.ranking = fa::parse_ranking_rule(rule);
    return FA_OK;
  });
}

fa_status fa_config_set_scope(fa_config* config, const char* rule) {
  return guard([&] {
    FA_REQUIRE(config && rule, "null argument");
    config->config.scoping = fa::parse_scoping_rule(rule);
    return FA_OK;
  });
}

fa_status fa_config_set_k_values(fa_config* config, const int* k_values, size_t count) {
  return guard([&] {
    FA_REQUIRE(config && (k_values || count == 0), "null argument");
    std::vector<int> ks(k_values, k_values + count);
    fa::validate_k_values(ks);
    config->config.k_values = std::move(ks);
    return FA_OK;
  });
}

fa_status fa_config_parse_k_values(fa_config* config, const char* list) {
  return guard([&] {
    FA_REQUIRE(config && list, "null argument");
    std::vector<int> ks;
    for (const std::string& part : split(list, ',')) {
      const std::string t = trim(part);
      std::size_t used = 0;
      int k = 0;
      try {
        k = std::stoi(t, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      FA_REQUIRE(!t.empty() && used == t.size(), "bad k value '" + t + "'");
      ks.push_back(k);
    }
    fa::validate_k_values(ks);
    config->config.k_values = std::move(ks);
    return FA_OK;
  });
}

fa_status fa_config_set_aggregation(fa_config* config, const char* spec) {
  return guard([&] {
    FA_REQUIRE(config && spec, "null argument");
    config->config.aggregation = fa::Aggregation::parse(spec);
    return FA_OK;
  });
}

fa_status fa_config_set_empty_set_policy(fa_config* config, const char* policy) {
  return guard([&] {
    FA_REQUIRE(config && policy, "null argument");
    config->config.empty_set_policy = fa::parse_empty_set_policy(policy);
    return FA_OK;
  });
}

fa_status fa_config_set_benign_labels(fa_config* config, const char* const* labels,
                                      size_t count) {
  return guard([&] {
    FA_REQUIRE(config && (labels || count == 0), "null argument");
    std::vector<std::string> out;
    for (size_t i = 0; i < count; ++i) {
      FA_REQUIRE(labels[i], "null benign label");
      out.emplace_back(labels[i]);
    }
    config->config.benign_labels = std::move(out);
    return FA_OK;
  });
}

fa_status fa_config_set_levels(fa_config* config, unsigned levels) {
  return guard([&] {
    FA_REQUIRE(config, "null argument");
    FA_REQUIRE(levels != 0 && (levels & ~static_cast<unsigned>(FA_LEVEL_ALL)) == 0,
               "levels must be a non-empty combination of FA_LEVEL_* bits");
    config->config.levels = levels;
    return FA_OK;
  });
}

fa_status fa_config_parse_levels(fa_config* config, const char* list) {
  return guard([&] {
    FA_REQUIRE(config && list, "null argument");
    unsigned levels = 0;
    for (const std::string& part : split(list, ',')) {
      const std::string t = trim(part);
      if (t == "all") {
        levels |= fa::kLevelAll;
      } else if (t == "instance") {
        levels |= fa::kLevelInstance;
      } else if (t == "class") {
        levels |= fa::kLevelClass;
      } else if (t == "dataset") {
        levels |= fa::kLevelDataset;
      } else {
        return fail(FA_ERR_INVALID_ARGUMENT, "unknown level '" + t + "'");
      }
    }
    config->config.levels = levels;
    return FA_OK;
  });
}

fa_status fa_config_to_json(const fa_config* config, fa_buffer** out) {
  return guard([&] {
    FA_REQUIRE(config && out, "null argument");
    fa::ResultsDocument doc{config->config, {}};
    const auto root = nlohmann::ordered_json::parse(
        fa::export_results(doc, fa::ExportFormat::kStructured));
    *out = make_buffer(root.at("config").dump(2) + "\n");
    return FA_OK;
  });
}

// ---------------------------------------------------------------------------
// reports

size_t fa_report_error_count(const fa_report* report) {
  return report ? report->report.errors.size() : 0;
}

size_t fa_report_warning_count(const fa_report* report) {
  return report ? report->report.warnings.size() : 0;
}

const char* fa_report_error_code(const fa_report* report, size_t index) {
  if (!report || index >= report->report.errors.size()) return nullptr;
  return report->report.errors[index].code.c_str();
}

const char* fa_report_warning_code(const fa_report* report, size_t index) {
  if (!report || index >= report->report.warnings.size()) return nullptr;
  return report->report.warnings[index].code.c_str();
}

fa_status fa_report_to_text(const fa_report* report, fa_buffer** out) {
  return guard([&] {
    FA_REQUIRE(report && out, "null argument");
    *out = make_buffer(fa::to_text(report->report));
    return FA_OK;
  });
}

void fa_report_destroy(fa_report* report) { delete report; }

fa_status fa_report_create(fa_report** out) {
  return guard([&] {
    FA_REQUIRE(out, "null output pointer");
    *out = new fa_report{};
    return FA_OK;
  });
}

fa_status fa_report_merge(fa_report* into, const fa_report* other) {
  return guard([&] {
    FA_REQUIRE(into && other, "null argument");
    into->report.merge(other->report);
    // Statistics are additive over disjoint sources; take the larger of
    // overlapping counts so corpus- and catalog-side views combine.
    auto& a = into->report.stats;
    const auto& b = other->report.stats;
    a.instances = std::max(a.instances, b.instances);
    a.pre_ranked_instances = std::max(a.pre_ranked_instances, b.pre_ranked_instances);
    a.classes = std::max(a.classes, b.classes);
    a.features = std::max(a.features, b.features);
    a.catalog_classes = std::max(a.catalog_classes, b.catalog_classes);
    a.catalog_features = std::max(a.catalog_features, b.catalog_features);
    a.unmatched_catalog_features =
        std::max(a.unmatched_catalog_features, b.unmatched_catalog_features);
    a.empty_domain_classes = std::max(a.empty_domain_classes, b.empty_domain_classes);
    into->report.sort_warnings();
    return FA_OK;
  });
}

// ---------------------------------------------------------------------------
// corpora and catalogs

fa_status fa_corpus_load_file(const char* path, const fa_config* config, fa_corpus** out,
                              fa_report** report) {
  return guard([&] {
    FA_REQUIRE(path && out, "null argument");
    *out = nullptr;
    if (report) *report = nullptr;
    const std::string text = fa::read_file(path);
    return load_corpus(text, config, out, report);
  });
}

fa_status fa_corpus_load_buffer(const char* data, size_t size, const fa_config* config,
                                fa_corpus** out, fa_report** report) {
  return guard([&] {
    FA_REQUIRE((data || size == 0) && out, "null argument");
    return load_corpus(std::string_view(data ? data : "", size), config, out, report);
  });
}

size_t fa_corpus_size(const fa_corpus* corpus) { return corpus ? corpus->corpus.size() : 0; }

void fa_corpus_destroy(fa_corpus* corpus) { delete corpus; }

fa_status fa_catalog_load_file(const char* path, fa_catalog** out, fa_report** report) {
  return guard([&] {
    FA_REQUIRE(path && out, "null argument");
    *out = nullptr;
    if (report) *report = nullptr;
    const std::string text = fa::read_file(path);
    return load_catalog(text, out, report);
  });
}

fa_status fa_catalog_load_buffer(const char* data, size_t size, fa_catalog** out,
                                 fa_report** report) {
  return guard([&] {
    FA_REQUIRE((data || size == 0) && out, "null argument");
    return load_catalog(std::string_view(data ? data : "", size), out, report);
  });
}

size_t fa_catalog_class_count(const fa_catalog* catalog) {
  return catalog ? catalog->catalog.classes().size() : 0;
}

void fa_catalog_destroy(fa_catalog* catalog) { delete catalog; }

fa_status fa_cross_validate(const fa_corpus* corpus, const fa_catalog* catalog,
                            const fa_config* config, fa_report** out) {
  return guard([&] {
    FA_REQUIRE(corpus && catalog && out, "null argument");
    const fa::EvaluationConfig cfg = config ? config->config : fa::EvaluationConfig{};
    *out = new fa_report{fa::cross_validate(corpus->corpus, catalog->catalog, cfg)};
    return FA_OK;
  });
}

// ---------------------------------------------------------------------------
// evaluation

fa_status fa_evaluation_create(const fa_catalog* catalog, const fa_config* config,
                               fa_evaluation** out) {
  return guard([&] {
    FA_REQUIRE(catalog && out, "null argument");
    const fa::EvaluationConfig cfg = config ? config->config : fa::EvaluationConfig{};
    cfg.validate();
    *out = new fa_evaluation{catalog->catalog, cfg, {}, {}};
    return FA_OK;
  });
}

fa_status fa_evaluation_add_model(fa_evaluation* evaluation, const char* name,
                                  const fa_corpus* corpus) {
  return guard([&] {
    FA_REQUIRE(evaluation && name && corpus, "null argument");
    std::vector<std::string> names;
    for (const auto& m : evaluation->models) names.push_back(m.model);
    FA_REQUIRE(!model_exists(names, name), std::string("duplicate model name '") + name + "'");

    const fa::EvaluationScope scope =
        fa::build_scope(corpus->corpus, evaluation->catalog, evaluation->config);
    fa::Evaluation eval =
        fa::evaluate(corpus->corpus, evaluation->catalog, scope, evaluation->config);

    fa::ModelResult result;
    result.model = name;
    result.stats =
        fa::cross_validate(corpus->corpus, evaluation->catalog, evaluation->config).stats;
    result.scope = fa::ScopeSummary::from(scope);
    result.unscoped_classes = std::move(eval.unscoped_classes);
    result.points = std::move(eval.points);

    const std::size_t model_index = evaluation->models.size();
    for (std::size_t i = 0; i < result.points.size(); ++i) {
      evaluation->index.emplace_back(model_index, i);
    }
    evaluation->models.push_back(std::move(result));
    return FA_OK;
  });
}

void fa_evaluation_destroy(fa_evaluation* evaluation) { delete evaluation; }

size_t fa_evaluation_point_count(const fa_evaluation* evaluation) {
  return evaluation ? evaluation->index.size() : 0;
}

fa_status fa_evaluation_get_point(const fa_evaluation* evaluation, size_t index,
                                  fa_point* out) {
  return guard([&] {
    FA_REQUIRE(evaluation && out, "null argument");
    FA_REQUIRE(index < evaluation->index.size(), "point index out of range");
    const auto [m, p] = evaluation->index[index];
    const fa::ModelResult& model = evaluation->models[m];
    const fa::MetricPoint& point = model.points[p];
    out->model = model.model.c_str();
    out->metric = static_cast<fa_metric>(point.metric);
    switch (point.level) {
      case fa::Level::kInstance: out->level = FA_LEVEL_INSTANCE; break;
      case fa::Level::kClass: out->level = FA_LEVEL_CLASS; break;
      case fa::Level::kDataset: out->level = FA_LEVEL_DATASET; break;
    }
    out->subject = point.subject.c_str();
    out->k = point.k;
    out->value = point.value;
    out->support = point.support;
    out->flags = point.flags;
    return FA_OK;
  });
}

fa_status fa_evaluation_export(const fa_evaluation* evaluation, fa_export_format format,
                               fa_buffer** out) {
  return guard([&] {
    FA_REQUIRE(evaluation && out, "null argument");
    const fa::ResultsDocument doc{evaluation->config, evaluation->models};
    *out = make_buffer(fa::export_results(
        doc, format == FA_EXPORT_STRUCTURED ? fa::ExportFormat::kStructured
                                            : fa::ExportFormat::kDelimited));
    return FA_OK;
  });
}

fa_status fa_evaluation_render_table(const fa_evaluation* evaluation, fa_buffer** text,
                                     fa_buffer** delimited) {
  return guard([&] {
    FA_REQUIRE(evaluation, "null argument");
    const fa::RenderedTable table =
        fa::render_comparison_table(evaluation->models, evaluation->config.k_values);
    if (text) *text = make_buffer(table.text);
    if (delimited) *delimited = make_buffer(table.delimited);
    return FA_OK;
  });
}

fa_status fa_evaluation_write(const fa_evaluation* evaluation, const char* out_dir) {
  return guard([&] {
    FA_REQUIRE(evaluation && out_dir, "null argument");
    const std::filesystem::path dir(out_dir);
    make_dirs(dir);
    if ((evaluation->config.levels & fa::kLevelDataset) != 0) {
      const fa::RenderedTable table =
          fa::render_comparison_table(evaluation->models, evaluation->config.k_values);
      write_file(dir / "table.txt", table.text);
      write_file(dir / "table.csv", table.delimited);
    }
    const fa::ResultsDocument doc{evaluation->config, evaluation->models};
    write_file(dir / "results.csv", fa::export_results(doc, fa::ExportFormat::kDelimited));
    write_file(dir / "results.json", fa::export_results(doc, fa::ExportFormat::kStructured));
    return FA_OK;
  });
}

// ---------------------------------------------------------------------------
// sweeps

fa_status fa_sweep_create(const fa_catalog* catalog, const fa_config* config, int k_low,
                          int k_high, fa_sweep** out) {
  return guard([&] {
    FA_REQUIRE(catalog && out, "null argument");
    FA_REQUIRE(k_low >= 1 && k_high >= k_low, "k range needs 1 <= LO <= HI");
    fa::EvaluationConfig cfg = config ? config->config : fa::EvaluationConfig{};
    cfg.validate();
    *out = new fa_sweep{catalog->catalog, cfg, fa::KRange{k_low, k_high}, {}, {}, {}};
    return FA_OK;
  });
}

fa_status fa_sweep_create_from_range(const fa_catalog* catalog, const fa_config* config,
                                     const char* range, fa_sweep** out) {
  return guard([&] {
    FA_REQUIRE(range, "null argument");
    const fa::KRange r = fa::KRange::parse(range);
    return fa_sweep_create(catalog, config, r.low, r.high, out);
  });
}

fa_status fa_sweep_add_model(fa_sweep* sweep, const char* name, const fa_corpus* corpus) {
  return guard([&] {
    FA_REQUIRE(sweep && name && corpus, "null argument");
    std::vector<std::string> names;
    for (const auto& s : sweep->sweeps) names.push_back(s.model);
    FA_REQUIRE(!model_exists(names, name), std::string("duplicate model name '") + name + "'");

    const fa::EvaluationScope scope =
        fa::build_scope(corpus->corpus, sweep->catalog, sweep->config);
    fa::ModelSweep ms;
    ms.model = name;
    ms.sweep = fa::run_sweep(corpus->corpus, sweep->catalog, scope, sweep->config,
                             sweep->range);
    for (const auto& cls : scope.classes) {
      if (cls.instances.empty()) continue;
      const auto* fap = ms.sweep.find(fa::Metric::kFap, fa::Level::kClass, cls.class_name);
      const auto* far = ms.sweep.find(fa::Metric::kFar, fa::Level::kClass, cls.class_name);
      fa::TradeoffCurve curve = fa::tradeoff_curve(
          *fap, *far, sweep->catalog.classes()[cls.catalog_index].size());
      for (const auto& w : curve.warnings) sweep->warnings.push_back(ms.model + ": " + w);
      ms.tradeoffs.push_back(std::move(curve));
    }
    const auto* fap = ms.sweep.find(fa::Metric::kFap, fa::Level::kDataset, "dataset");
    const auto* far = ms.sweep.find(fa::Metric::kFar, fa::Level::kDataset, "dataset");
    if (fap && far) {
      fa::TradeoffCurve curve = fa::tradeoff_curve(*fap, *far, 0);
      curve.warnings.clear();  // no reference cutoff at dataset level
      ms.tradeoffs.push_back(std::move(curve));
    }

    const std::size_t model_index = sweep->sweeps.size();
    for (std::size_t i = 0; i < ms.sweep.series.size(); ++i) {
      sweep->index.emplace_back(model_index, i);
    }
    sweep->sweeps.push_back(std::move(ms));
    return FA_OK;
  });
}

size_t fa_sweep_series_count(const fa_sweep* sweep) { return sweep ? sweep->index.size() : 0; }

fa_status fa_sweep_get_series(const fa_sweep* sweep, size_t index, const char** model,
                              fa_metric* metric, fa_level* level, const char** subject,
                              size_t* n_points) {
  return guard([&] {
    FA_REQUIRE(sweep, "null argument");
    FA_REQUIRE(index < sweep->index.size(), "series index out of range");
    const auto [m, s] = sweep->index[index];
    const fa::CurveSeries& series = sweep->sweeps[m].sweep.series[s];
    if (model) *model = sweep->sweeps[m].model.c_str();
    if (metric) *metric = static_cast<fa_metric>(series.metric);
    if (level) *level = series.level == fa::Level::kClass ? FA_LEVEL_CLASS : FA_LEVEL_DATASET;
    if (subject) *subject = series.subject.c_str();
    if (n_points) *n_points = series.points.size();
    return FA_OK;
  });
}

fa_status fa_sweep_get_series_point(const fa_sweep* sweep, size_t series, size_t index,
                                    int* k, double* value) {
  return guard([&] {
    FA_REQUIRE(sweep, "null argument");
    FA_REQUIRE(series < sweep->index.size(), "series index out of range");
    const auto [m, s] = sweep->index[series];
    const fa::CurveSeries& cs = sweep->sweeps[m].sweep.series[s];
    FA_REQUIRE(index < cs.points.size(), "point index out of range");
    if (k) *k = cs.points[index].k;
    if (value) *value = cs.points[index].value;
    return FA_OK;
  });
}

size_t fa_sweep_warning_count(const fa_sweep* sweep) {
  return sweep ? sweep->warnings.size() : 0;
}

const char* fa_sweep_warning(const fa_sweep* sweep, size_t index) {
  if (!sweep || index >= sweep->warnings.size()) return nullptr;
  return sweep->warnings[index].c_str();
}

fa_status fa_sweep_write(const fa_sweep* sweep, const char* out_dir) {
  return guard([&] {
    FA_REQUIRE(sweep && out_dir, "null argument");
    const std::filesystem::path dir = std::filesystem::path(out_dir) / "curves";
    make_dirs(dir);
    for (const auto& doc : fa::render_curves(sweep->sweeps)) {
      write_file(dir / doc.name, doc.content);
    }
    write_file(dir / "curves.csv", fa::export_curves_csv(sweep->sweeps));
    write_file(dir / "tradeoff.csv", fa::export_tradeoff_csv(sweep->sweeps));
    write_file(dir / "summary.csv", fa::export_summary_csv(sweep->sweeps));
    return FA_OK;
  });
}

void fa_sweep_destroy(fa_sweep* sweep) { delete sweep; }

// ---------------------------------------------------------------------------
// synthetic data

fa_status fa_synth_random(size_t n_features, size_t f_set_size, size_t n_instances,
                          uint64_t seed, fa_buffer** explanations, fa_buffer** catalog) {
  return guard([&] {
    FA_REQUIRE(explanations && catalog, "null argument");
    FA_REQUIRE(n_features >= 1 && n_instances >= 1, "need at least one feature and instance");
    fa::synth::RandomCorpus data =
        fa::synth::gen_random(n_features, f_set_size, n_instances, seed);
    *explanations = make_buffer(serialize_corpus(data.corpus));
    *catalog = make_buffer(fa::serialize_catalog(fa::synth::single_class_catalog(data.domain)));
    return FA_OK;
  });
}

fa_status fa_synth_aligned(size_t n_features, size_t f_set_size, double alignment,
                           uint64_t seed, fa_buffer** explanations, fa_buffer** catalog) {
  return guard([&] {
    FA_REQUIRE(explanations && catalog, "null argument");
    FA_REQUIRE(n_features >= 1, "need at least one feature");
    fa::synth::AlignedSample sample =
        fa::synth::gen_aligned(n_features, f_set_size, alignment, seed);
    *explanations = make_buffer(fa::serialize_explanation(sample.explanation) + "\n");
    *catalog =
        make_buffer(fa::serialize_catalog(fa::synth::single_class_catalog(sample.domain)));
    return FA_OK;
  });
}

}  // extern "C"
