/*
 * featalign C API.
 *
 * Every object is an opaque handle created by a *_create / *_load function and
 * released by the matching *_destroy. Functions return FA_OK or an error
 * status; fa_last_error() then describes the failure for the calling thread.
 * Borrowed strings stay valid until the owning handle is destroyed.
 */
#ifndef FEATALIGN_FEATALIGN_H_
#define FEATALIGN_FEATALIGN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(FEATALIGN_BUILDING)
#define FA_API __declspec(dllexport)
#else
#define FA_API __declspec(dllimport)
#endif
#else
#define FA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fa_status {
  FA_OK = 0,
  FA_ERR_INVALID_ARGUMENT = 1, /* bad flag value, null handle, bad k */
  FA_ERR_IO = 2,               /* unreadable input or unwritable output */
  FA_ERR_VALIDATION = 3,       /* input failed validation; see the report */
  FA_ERR_NO_EVALUABLE_CLASSES = 4,
  FA_ERR_INCOMPLETE_RESULTS = 5,
  FA_ERR_SERIES_MISMATCH = 6,
  FA_ERR_INTERNAL = 7
} fa_status;

typedef enum fa_metric { FA_METRIC_FAP = 0, FA_METRIC_FAR = 1, FA_METRIC_FAF1 = 2 } fa_metric;

typedef enum fa_level {
  FA_LEVEL_INSTANCE = 1,
  FA_LEVEL_CLASS = 2,
  FA_LEVEL_DATASET = 4,
  FA_LEVEL_ALL = 7
} fa_level;

enum {
  FA_FLAG_EMPTY_DOMAIN_SET = 1,
  FA_FLAG_DEGENERATE_EXPLANATION = 2
};

typedef struct fa_config fa_config;
typedef struct fa_corpus fa_corpus;
typedef struct fa_catalog fa_catalog;
typedef struct fa_report fa_report;
typedef struct fa_evaluation fa_evaluation;
typedef struct fa_sweep fa_sweep;
typedef struct fa_buffer fa_buffer;

FA_API const char* fa_version(void);
FA_API const char* fa_last_error(void);
FA_API const char* fa_status_name(fa_status status);

/* Byte buffers returned by rendering/export calls. */
FA_API const char* fa_buffer_data(const fa_buffer* buffer);
FA_API size_t fa_buffer_size(const fa_buffer* buffer);
FA_API void fa_buffer_destroy(fa_buffer* buffer);

/* Evaluation settings. A new config holds the defaults: ranking absolute,
 * scope correct_only, k 5,10,20,40, aggregation mean, empty-set policy
 * exclude, benign label "benign", all levels. */
FA_API fa_status fa_config_create(fa_config** out);
FA_API void fa_config_destroy(fa_config* config);
FA_API fa_status fa_config_set_ranking(fa_config* config, const char* rule);
FA_API fa_status fa_config_set_scope(fa_config* config, const char* rule);
FA_API fa_status fa_config_set_k_values(fa_config* config, const int* k_values,
                                        size_t count);
/* "5,10,20,40" */
FA_API fa_status fa_config_parse_k_values(fa_config* config, const char* list);
/* "mean", "median", "weighted" or "trimmed:<alpha>" with alpha in [0, 0.5). */
FA_API fa_status fa_config_set_aggregation(fa_config* config, const char* spec);
FA_API fa_status fa_config_set_empty_set_policy(fa_config* config, const char* policy);
FA_API fa_status fa_config_set_benign_labels(fa_config* config,
                                             const char* const* labels, size_t count);
/* Bitwise OR of fa_level values. */
FA_API fa_status fa_config_set_levels(fa_config* config, unsigned levels);
/* "all", "instance", "class", "dataset" or a comma-separated combination. */
FA_API fa_status fa_config_parse_levels(fa_config* config, const char* list);
/* JSON echo of the effective configuration. */
FA_API fa_status fa_config_to_json(const fa_config* config, fa_buffer** out);

/* Validation reports. */
FA_API size_t fa_report_error_count(const fa_report* report);
FA_API size_t fa_report_warning_count(const fa_report* report);
/* Code of the i-th error / warning, e.g. "DuplicateInstance". */
FA_API const char* fa_report_error_code(const fa_report* report, size_t index);
FA_API const char* fa_report_warning_code(const fa_report* report, size_t index);
FA_API fa_status fa_report_to_text(const fa_report* report, fa_buffer** out);
FA_API void fa_report_destroy(fa_report* report);
/* Creates an empty report that fa_report_merge can accumulate into. */
FA_API fa_status fa_report_create(fa_report** out);
FA_API fa_status fa_report_merge(fa_report* into, const fa_report* other);

/* Explanation corpora in the line-delimited interchange format. On a
 * validation failure the status is FA_ERR_VALIDATION, *out is NULL and
 * *report (always set when report is non-NULL) lists the problems. The config
 * decides whether predicted_class is required (correct_only scope). */
FA_API fa_status fa_corpus_load_file(const char* path, const fa_config* config,
                                     fa_corpus** out, fa_report** report);
FA_API fa_status fa_corpus_load_buffer(const char* data, size_t size,
                                       const fa_config* config, fa_corpus** out,
                                       fa_report** report);
FA_API size_t fa_corpus_size(const fa_corpus* corpus);
FA_API void fa_corpus_destroy(fa_corpus* corpus);

/* Domain feature catalogs (JSON, version 1). Same error contract as corpora. */
FA_API fa_status fa_catalog_load_file(const char* path, fa_catalog** out,
                                      fa_report** report);
FA_API fa_status fa_catalog_load_buffer(const char* data, size_t size,
                                        fa_catalog** out, fa_report** report);
FA_API size_t fa_catalog_class_count(const fa_catalog* catalog);
FA_API void fa_catalog_destroy(fa_catalog* catalog);

/* Catalog/corpus coverage warnings and statistics. */
FA_API fa_status fa_cross_validate(const fa_corpus* corpus, const fa_catalog* catalog,
                                   const fa_config* config, fa_report** out);

/* Point-in-k evaluation of one or more models against one catalog. The
 * catalog and config are copied; corpora are only read during add_model. */
FA_API fa_status fa_evaluation_create(const fa_catalog* catalog, const fa_config* config,
                                      fa_evaluation** out);
FA_API fa_status fa_evaluation_add_model(fa_evaluation* evaluation, const char* name,
                                         const fa_corpus* corpus);
FA_API void fa_evaluation_destroy(fa_evaluation* evaluation);

typedef struct fa_point {
  const char* model;
  fa_metric metric;
  fa_level level;
  const char* subject;
  int k;
  double value;
  size_t support;
  unsigned flags;
} fa_point;

FA_API size_t fa_evaluation_point_count(const fa_evaluation* evaluation);
FA_API fa_status fa_evaluation_get_point(const fa_evaluation* evaluation, size_t index,
                                         fa_point* out);

typedef enum fa_export_format {
  FA_EXPORT_DELIMITED = 0,
  FA_EXPORT_STRUCTURED = 1
} fa_export_format;

FA_API fa_status fa_evaluation_export(const fa_evaluation* evaluation,
                                      fa_export_format format, fa_buffer** out);
/* Text table (rounded) and its CSV twin (full precision). Either out pointer
 * may be NULL. */
FA_API fa_status fa_evaluation_render_table(const fa_evaluation* evaluation,
                                            fa_buffer** text, fa_buffer** delimited);
/* Writes table.txt, table.csv, results.csv and results.json into out_dir
 * (created if missing). */
FA_API fa_status fa_evaluation_write(const fa_evaluation* evaluation, const char* out_dir);

/* k-sweeps with curve output. */
FA_API fa_status fa_sweep_create(const fa_catalog* catalog, const fa_config* config,
                                 int k_low, int k_high, fa_sweep** out);
/* "LO..HI" */
FA_API fa_status fa_sweep_create_from_range(const fa_catalog* catalog,
                                            const fa_config* config, const char* range,
                                            fa_sweep** out);
FA_API fa_status fa_sweep_add_model(fa_sweep* sweep, const char* name,
                                    const fa_corpus* corpus);
FA_API size_t fa_sweep_series_count(const fa_sweep* sweep);
/* Borrowed view of one series: model name, subject, and n_points (k, value)
 * pairs. */
FA_API fa_status fa_sweep_get_series(const fa_sweep* sweep, size_t index,
                                     const char** model, fa_metric* metric,
                                     fa_level* level, const char** subject,
                                     size_t* n_points);
FA_API fa_status fa_sweep_get_series_point(const fa_sweep* sweep, size_t series,
                                           size_t index, int* k, double* value);
/* Number of trade-off warnings (e.g. a class whose |F_c| lies outside the
 * swept range) and their text. */
FA_API size_t fa_sweep_warning_count(const fa_sweep* sweep);
FA_API const char* fa_sweep_warning(const fa_sweep* sweep, size_t index);
/* Writes <out_dir>/curves/{<metric>_<level>.svg, tradeoff_<class>.svg,
 * curves.csv, tradeoff.csv, summary.csv}. */
FA_API fa_status fa_sweep_write(const fa_sweep* sweep, const char* out_dir);
FA_API void fa_sweep_destroy(fa_sweep* sweep);

/* Synthetic data in the interchange and catalog formats. */
FA_API fa_status fa_synth_random(size_t n_features, size_t f_set_size,
                                 size_t n_instances, uint64_t seed,
                                 fa_buffer** explanations, fa_buffer** catalog);
FA_API fa_status fa_synth_aligned(size_t n_features, size_t f_set_size, double alignment,
                                  uint64_t seed, fa_buffer** explanations,
                                  fa_buffer** catalog);

#ifdef __cplusplus
}
#endif

#endif /* FEATALIGN_FEATALIGN_H_ */
