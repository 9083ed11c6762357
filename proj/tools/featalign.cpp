// featalign: command-line front end over the featalign C API.
//
//   featalign validate --explanations [NAME=]PATH... --catalog PATH
//   featalign evaluate --explanations [NAME=]PATH... --catalog PATH --out DIR [options]
//   featalign sweep    --explanations [NAME=]PATH... --catalog PATH --out DIR --k-range LO..HI
//   featalign synth    --out DIR [--mode random|aligned] [options]
//
// Exit status: 0 ok, 1 invalid input or nothing to evaluate, 2 usage or I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "featalign/featalign.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};

using Config = std::unique_ptr<fa_config, Deleter<fa_config, fa_config_destroy>>;
using Corpus = std::unique_ptr<fa_corpus, Deleter<fa_corpus, fa_corpus_destroy>>;
using Catalog = std::unique_ptr<fa_catalog, Deleter<fa_catalog, fa_catalog_destroy>>;
using Report = std::unique_ptr<fa_report, Deleter<fa_report, fa_report_destroy>>;
using Buffer = std::unique_ptr<fa_buffer, Deleter<fa_buffer, fa_buffer_destroy>>;
using Evaluation =
    std::unique_ptr<fa_evaluation, Deleter<fa_evaluation, fa_evaluation_destroy>>;
using Sweep = std::unique_ptr<fa_sweep, Deleter<fa_sweep, fa_sweep_destroy>>;

// Carries an exit status out of nested helpers.
struct Exit {
  int code;
};

int exit_code_for(fa_status status) {
  switch (status) {
    case FA_OK: return kExitOk;
    case FA_ERR_VALIDATION:
    case FA_ERR_NO_EVALUABLE_CLASSES:
    case FA_ERR_INCOMPLETE_RESULTS:
      return kExitInvalid;
    case FA_ERR_INVALID_ARGUMENT:
    case FA_ERR_IO:
      return kExitUsage;
    default:
      return kExitInvalid;
  }
}

void check(fa_status status, const std::string& context) {
  if (status == FA_OK) return;
  std::fprintf(stderr, "featalign: %s: %s\n", context.c_str(), fa_last_error());
  throw Exit{exit_code_for(status)};
}

std::string buffer_text(const Buffer& b) {
  return std::string(fa_buffer_data(b.get()), fa_buffer_size(b.get()));
}

void print_report(const std::string& heading, const fa_report* report) {
  if (report == nullptr) return;
  fa_buffer* raw = nullptr;
  if (fa_report_to_text(report, &raw) != FA_OK) return;
  Buffer text(raw);
  std::printf("== %s\n%s", heading.c_str(), buffer_text(text).c_str());
}

struct Source {
  std::string name;
  std::string path;
};

std::vector<Source> parse_sources(const std::vector<std::string>& specs) {
  std::vector<Source> out;
  for (const auto& spec : specs) {
    Source s;
    const auto eq = spec.find('=');
    if (eq != std::string::npos && eq > 0) {
      s.name = spec.substr(0, eq);
      s.path = spec.substr(eq + 1);
    } else {
      s.path = spec;
      s.name = std::filesystem::path(spec).stem().string();
    }
    for (const auto& prev : out) {
      if (prev.name == s.name) {
        std::fprintf(stderr, "featalign: duplicate model name '%s'\n", s.name.c_str());
        throw Exit{kExitUsage};
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

struct Options {
  std::vector<std::string> explanations;
  std::string catalog;
  std::string out;
  std::string k_list = "5,10,20,40";
  std::string levels = "all";
  std::string aggregation = "mean";
  std::string ranking = "absolute";
  std::string scope = "correct-only";
  std::string empty_set_policy = "exclude";
  std::vector<std::string> benign{"benign"};
  std::string format = "both";
  std::string k_range = "1..40";
};

Config make_config(const Options& o) {
  fa_config* raw = nullptr;
  check(fa_config_create(&raw), "config");
  Config config(raw);
  check(fa_config_parse_k_values(config.get(), o.k_list.c_str()), "--k");
  check(fa_config_parse_levels(config.get(), o.levels.c_str()), "--level");
  check(fa_config_set_aggregation(config.get(), o.aggregation.c_str()), "--agg");
  check(fa_config_set_ranking(config.get(), o.ranking.c_str()), "--ranking");
  check(fa_config_set_scope(config.get(), o.scope.c_str()), "--scope");
  check(fa_config_set_empty_set_policy(config.get(), o.empty_set_policy.c_str()),
        "--empty-set-policy");
  std::vector<const char*> labels;
  for (const auto& b : o.benign) labels.push_back(b.c_str());
  check(fa_config_set_benign_labels(config.get(), labels.data(), labels.size()), "--benign");
  return config;
}

Catalog load_catalog(const std::string& path) {
  fa_catalog* raw = nullptr;
  fa_report* report = nullptr;
  const fa_status status = fa_catalog_load_file(path.c_str(), &raw, &report);
  Report owned(report);
  if (status == FA_ERR_VALIDATION) print_report("catalog: " + path, owned.get());
  check(status, path);
  return Catalog(raw);
}

Corpus load_corpus(const Source& source, const fa_config* config) {
  fa_corpus* raw = nullptr;
  fa_report* report = nullptr;
  const fa_status status = fa_corpus_load_file(source.path.c_str(), config, &raw, &report);
  Report owned(report);
  if (status == FA_ERR_VALIDATION) {
    print_report("explanations: " + source.name + " (" + source.path + ")", owned.get());
  }
  check(status, source.path);
  return Corpus(raw);
}

int run_validate(const Options& o) {
  const Config config = make_config(o);
  const std::vector<Source> sources = parse_sources(o.explanations);
  bool failed = false;

  fa_catalog* cat_raw = nullptr;
  fa_report* cat_report_raw = nullptr;
  fa_status status = fa_catalog_load_file(o.catalog.c_str(), &cat_raw, &cat_report_raw);
  Catalog catalog(cat_raw);
  Report cat_report(cat_report_raw);
  if (status == FA_ERR_IO) check(status, o.catalog);
  print_report("catalog: " + o.catalog, cat_report.get());
  failed |= status != FA_OK;

  for (const auto& source : sources) {
    fa_corpus* raw = nullptr;
    fa_report* report_raw = nullptr;
    status = fa_corpus_load_file(source.path.c_str(), config.get(), &raw, &report_raw);
    Corpus corpus(raw);
    Report report(report_raw);
    if (status == FA_ERR_IO) check(status, source.path);
    print_report("explanations: " + source.name + " (" + source.path + ")", report.get());
    failed |= status != FA_OK;
    if (corpus && catalog) {
      fa_report* cross_raw = nullptr;
      check(fa_cross_validate(corpus.get(), catalog.get(), config.get(), &cross_raw),
            "cross-validate");
      Report cross(cross_raw);
      print_report("coverage: " + source.name, cross.get());
    }
  }
  return failed ? kExitInvalid : kExitOk;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::fprintf(stderr, "featalign: cannot write %s\n", path.string().c_str());
    throw Exit{kExitUsage};
  }
}

int run_evaluate(const Options& o) {
  const Config config = make_config(o);
  const std::vector<Source> sources = parse_sources(o.explanations);
  const Catalog catalog = load_catalog(o.catalog);

  fa_evaluation* raw = nullptr;
  check(fa_evaluation_create(catalog.get(), config.get(), &raw), "evaluate");
  Evaluation evaluation(raw);
  for (const auto& source : sources) {
    const Corpus corpus = load_corpus(source, config.get());
    check(fa_evaluation_add_model(evaluation.get(), source.name.c_str(), corpus.get()),
          source.name);
  }

  if (o.format == "both") {
    check(fa_evaluation_write(evaluation.get(), o.out.c_str()), o.out);
  } else {
    const std::filesystem::path dir(o.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      std::fprintf(stderr, "featalign: cannot create %s: %s\n", o.out.c_str(),
                   ec.message().c_str());
      return kExitUsage;
    }
    fa_buffer* text_raw = nullptr;
    fa_buffer* csv_raw = nullptr;
    const fa_status table_status =
        fa_evaluation_render_table(evaluation.get(), &text_raw, &csv_raw);
    Buffer text(text_raw), csv(csv_raw);
    if (table_status == FA_OK) {
      write_text(dir / "table.txt", buffer_text(text));
      write_text(dir / "table.csv", buffer_text(csv));
    }
    const bool json = o.format == "json";
    fa_buffer* export_raw = nullptr;
    check(fa_evaluation_export(evaluation.get(),
                               json ? FA_EXPORT_STRUCTURED : FA_EXPORT_DELIMITED, &export_raw),
          "export");
    Buffer exported(export_raw);
    write_text(dir / (json ? "results.json" : "results.csv"), buffer_text(exported));
  }

  fa_buffer* text_raw = nullptr;
  if (fa_evaluation_render_table(evaluation.get(), &text_raw, nullptr) == FA_OK) {
    Buffer text(text_raw);
    std::fputs(buffer_text(text).c_str(), stdout);
  }
  return kExitOk;
}

int run_sweep(const Options& o) {
  const Config config = make_config(o);
  const std::vector<Source> sources = parse_sources(o.explanations);
  const Catalog catalog = load_catalog(o.catalog);

  fa_sweep* raw = nullptr;
  check(fa_sweep_create_from_range(catalog.get(), config.get(), o.k_range.c_str(), &raw),
        "--k-range");
  Sweep sweep(raw);
  for (const auto& source : sources) {
    const Corpus corpus = load_corpus(source, config.get());
    check(fa_sweep_add_model(sweep.get(), source.name.c_str(), corpus.get()), source.name);
  }
  check(fa_sweep_write(sweep.get(), o.out.c_str()), o.out);
  for (size_t i = 0; i < fa_sweep_warning_count(sweep.get()); ++i) {
    std::fprintf(stderr, "warning: %s\n", fa_sweep_warning(sweep.get(), i));
  }
  std::printf("wrote %zu series to %s/curves\n", fa_sweep_series_count(sweep.get()),
              o.out.c_str());
  return kExitOk;
}

struct SynthOptions {
  std::string out;
  std::string mode = "random";
  size_t features = 78;
  size_t domain_size = 10;
  size_t instances = 1000;
  double alignment = 0.5;
  uint64_t seed = 1;
};

int run_synth(const SynthOptions& s) {
  fa_buffer* expl_raw = nullptr;
  fa_buffer* cat_raw = nullptr;
  if (s.mode == "aligned") {
    check(fa_synth_aligned(s.features, s.domain_size, s.alignment, s.seed, &expl_raw,
                           &cat_raw),
          "synth");
  } else {
    check(fa_synth_random(s.features, s.domain_size, s.instances, s.seed, &expl_raw,
                          &cat_raw),
          "synth");
  }
  Buffer explanations(expl_raw);
  Buffer catalog(cat_raw);
  const std::filesystem::path dir(s.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "featalign: cannot create %s: %s\n", s.out.c_str(),
                 ec.message().c_str());
    return kExitUsage;
  }
  write_text(dir / "explanations.jsonl", buffer_text(explanations));
  write_text(dir / "catalog.json", buffer_text(catalog));
  return kExitOk;
}

void add_inputs(CLI::App* cmd, Options& o) {
  cmd->add_option("--explanations,-e", o.explanations,
                  "Explanation corpus as [NAME=]PATH; repeat for several models")
      ->required();
  cmd->add_option("--catalog,-c", o.catalog, "Domain feature catalog (JSON)")->required();
}

void add_evaluation_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--ranking", o.ranking, "absolute | signed | positive-only")
      ->capture_default_str();
  cmd->add_option("--scope", o.scope, "correct-only | true-class-all")->capture_default_str();
  cmd->add_option("--agg", o.aggregation, "mean | median | weighted | trimmed:ALPHA")
      ->capture_default_str();
  cmd->add_option("--empty-set-policy", o.empty_set_policy, "exclude | include-as-zero")
      ->capture_default_str();
  cmd->add_option("--benign", o.benign, "Labels excluded before scoping")
      ->delimiter(',')
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feature alignment metrics for intrusion-detection explanations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fa_version()));

  Options options;
  SynthOptions synth;

  CLI::App* validate = app.add_subcommand("validate", "Check explanation and catalog files");
  add_inputs(validate, options);
  validate->add_option("--scope", options.scope,
                       "correct-only requires predicted_class on every record")
      ->capture_default_str();

  CLI::App* evaluate = app.add_subcommand("evaluate", "Compute FAP/FAR/FAF1 at fixed k");
  add_inputs(evaluate, options);
  add_evaluation_flags(evaluate, options);
  evaluate->add_option("--k", options.k_list, "Comma-separated k values")
      ->capture_default_str();
  evaluate->add_option("--level", options.levels, "all | instance,class,dataset")
      ->capture_default_str();
  evaluate->add_option("--out,-o", options.out, "Output directory")->required();
  evaluate->add_option("--format", options.format, "Result export: csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep k and draw curves");
  add_inputs(sweep, options);
  add_evaluation_flags(sweep, options);
  sweep->add_option("--k-range", options.k_range, "LO..HI")->capture_default_str();
  sweep->add_option("--out,-o", options.out, "Output directory")->required();

  CLI::App* gen = app.add_subcommand("synth", "Write a synthetic corpus and catalog");
  gen->add_option("--out,-o", synth.out, "Output directory")->required();
  gen->add_option("--mode", synth.mode, "random | aligned")
      ->check(CLI::IsMember({"random", "aligned"}))
      ->capture_default_str();
  gen->add_option("--features", synth.features, "Feature universe size")
      ->capture_default_str();
  gen->add_option("--domain-size", synth.domain_size, "Domain feature set size")
      ->capture_default_str();
  gen->add_option("--instances", synth.instances, "Instances (random mode)")
      ->capture_default_str();
  gen->add_option("--alignment", synth.alignment, "Aligned fraction (aligned mode)")
      ->capture_default_str();
  gen->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return run_validate(options);
    if (evaluate->parsed()) return run_evaluate(options);
    if (sweep->parsed()) return run_sweep(options);
    return run_synth(synth);
  } catch (const Exit& e) {
    return e.code;
  }
}
