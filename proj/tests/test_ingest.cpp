#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "core/error.hpp"
#include "core/ingest.hpp"
#include "helpers.hpp"

using namespace featalign;

namespace {

bool has_code(const std::vector<Issue>& issues, const std::string& code) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const Issue& i) { return i.code == code; });
}

const char* kCatalog = R"({
  "version": 1,
  "classes": [
    {"name": "DDoS/DoS", "aliases": ["DoS", "DDoS"], "attack_refs": ["T1498"],
     "features": ["Flow Duration", "SYN Flag Count", "ACK Flag Count"]},
    {"name": "PortScan", "aliases": [], "attack_refs": ["T1046"],
     "features": ["Destination Port", "Flow Duration", "Total Fwd Packets", "ttl variance"]},
    {"name": "Bot", "aliases": [], "attack_refs": [], "features": []}
  ]
})";

DomainFeatureCatalog sample_catalog() {
  auto loaded = load_catalog(kCatalog);
  REQUIRE(loaded.report.ok());
  return *loaded.catalog;
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("one valid record") {
  const auto loaded = load_explanations(
      R"({"id":"i1","true_class":"DoS","predicted_class":"DoS","attributions":[)"
      R"({"feature":"Flow Duration","value":0.5},{"feature":"SYN Flag Count","value":-0.2},)"
      R"({"feature":"Fwd IAT Mean","value":0.1}]})");
  REQUIRE(loaded.report.ok());
  REQUIRE(loaded.corpus.size() == 1);
  CHECK(loaded.corpus[0].n_features() == 3);
  CHECK(loaded.corpus[0].instance_id() == "i1");
  CHECK(loaded.corpus[0].predicted_class() == std::optional<std::string>("DoS"));
  CHECK(loaded.report.stats.instances == 1);
  CHECK(loaded.report.stats.features == 3);
}

TEST_CASE("names that collide after canonicalization") {
  const auto loaded = load_explanations(
      R"({"id":"i1","true_class":"DoS","predicted_class":"DoS","attributions":[)"
      R"({"feature":"Flow Duration","value":0.5},{"feature":" flow  duration","value":0.1}]})");
  CHECK(has_code(loaded.report.errors, "DuplicateFeature"));
  CHECK(loaded.corpus.empty());
}

TEST_CASE("duplicate instance ids") {
  const auto loaded = load_explanations(
      "{\"id\":\"i1\",\"true_class\":\"DoS\",\"predicted_class\":\"DoS\",\"attributions\":[]}\n"
      "{\"id\":\"i1\",\"true_class\":\"DoS\",\"predicted_class\":\"DoS\",\"attributions\":[]}\n");
  REQUIRE(loaded.report.errors.size() == 1);
  CHECK(loaded.report.errors[0].code == "DuplicateInstance");
  CHECK(loaded.report.errors[0].subject == "line 2");
}

TEST_CASE("record-level errors carry their line") {
  const std::string text =
      "\n"
      "{not json}\n"
      "{\"true_class\":\"DoS\",\"predicted_class\":\"DoS\",\"attributions\":[]}\n"
      "{\"id\":\"a\",\"true_class\":\"DoS\",\"attributions\":[]}\n"
      "{\"id\":\"b\",\"true_class\":\"DoS\",\"predicted_class\":\"DoS\"}\n"
      "{\"id\":\"c\",\"true_class\":\"DoS\",\"predicted_class\":\"DoS\","
      "\"attributions\":[{\"feature\":\"x\"}]}\n"
      "{\"id\":\"d\",\"true_class\":\"DoS\",\"predicted_class\":\"DoS\","
      "\"attributions\":[{\"feature\":\"  \",\"value\":1}]}\n";
  const auto loaded = load_explanations(text);
  const auto& errors = loaded.report.errors;
  REQUIRE(errors.size() == 6);
  CHECK(errors[0].code == "ParseError");
  CHECK(errors[0].subject == "line 2");
  CHECK(errors[1].code == "MissingField");
  CHECK(errors[2].code == "MissingPredictedClass");
  CHECK(errors[3].code == "MissingScore");
  CHECK(errors[4].code == "MissingScore");
  CHECK(errors[5].code == "EmptyFeatureName");
  CHECK(errors[5].subject == "line 7");
}

TEST_CASE("predicted_class is optional when not required") {
  LoadOptions options;
  options.require_predicted_class = false;
  const auto loaded = load_explanations(
      R"({"id":"a","true_class":"DoS","attributions":[{"feature":"x","value":1}]})", options);
  REQUIRE(loaded.report.ok());
  CHECK_FALSE(loaded.corpus[0].predicted_class().has_value());
}

TEST_CASE("non-finite and non-numeric scores") {
  // JSON has no NaN literal; a huge exponent overflows to infinity.
  const auto inf = load_explanations(
      R"({"id":"a","true_class":"DoS","predicted_class":"DoS","attributions":[{"feature":"x","value":1e999}]})");
  CHECK(has_code(inf.report.errors, "NonFiniteScore"));
  const auto str = load_explanations(
      R"({"id":"a","true_class":"DoS","predicted_class":"DoS","attributions":[{"feature":"x","value":"0.5"}]})");
  CHECK(has_code(str.report.errors, "ParseError"));
}

TEST_CASE("empty input") {
  CHECK(has_code(load_explanations("").report.errors, "EmptyInput"));
  CHECK(has_code(load_explanations("\n  \n").report.errors, "EmptyInput"));
}

TEST_CASE("pre-ranked records are accepted and reported") {
  const auto loaded = load_explanations(
      "{\"id\":\"a\",\"true_class\":\"DoS\",\"predicted_class\":\"DoS\","
      "\"ranked_features\":[\"z\",\"y\"]}\n"
      "{\"id\":\"b\",\"true_class\":\"DoS\",\"predicted_class\":\"DoS\","
      "\"attributions\":[{\"feature\":\"z\",\"value\":0.1}]}\n");
  REQUIRE(loaded.report.ok());
  CHECK(loaded.corpus[0].pre_ranked());
  CHECK_FALSE(loaded.corpus[1].pre_ranked());
  CHECK(loaded.report.stats.pre_ranked_instances == 1);
  CHECK(has_code(loaded.report.warnings, "PreRankedRecords"));
}

TEST_CASE("serialization round trip is lossless") {
  const std::string text =
      "{\"id\":\"a\",\"true_class\":\"DoS\",\"predicted_class\":\"Benign\","
      "\"attributions\":[{\"feature\":\" Flow Duration\",\"value\":0.1},"
      "{\"feature\":\"B\",\"value\":-3.0000000000000004e-7}]}\n"
      "{\"id\":\"b\",\"true_class\":\"DoS\",\"ranked_features\":[\"q\",\"p\"]}\n";
  LoadOptions options;
  options.require_predicted_class = false;
  const auto first = load_explanations(text, options);
  REQUIRE(first.report.ok());
  std::string again;
  for (const auto& e : first.corpus) again += serialize_explanation(e) + "\n";
  const auto second = load_explanations(again, options);
  REQUIRE(second.report.ok());
  REQUIRE(first.corpus.size() == second.corpus.size());
  for (std::size_t i = 0; i < first.corpus.size(); ++i) {
    CHECK(first.corpus[i] == second.corpus[i]);
  }
}

TEST_CASE("stream overload matches the buffer overload") {
  std::istringstream in(
      R"({"id":"a","true_class":"DoS","predicted_class":"DoS","attributions":[{"feature":"x","value":1}]})");
  const auto loaded = load_explanations(in);
  REQUIRE(loaded.report.ok());
  CHECK(loaded.corpus.size() == 1);
}

TEST_CASE("catalog with one class") {
  const auto loaded = load_catalog(
      R"({"version":1,"classes":[{"name":"PortScan","features":["a","b","c","d"]}]})");
  REQUIRE(loaded.report.ok());
  REQUIRE(loaded.catalog->classes().size() == 1);
  CHECK(loaded.catalog->classes()[0].size() == 4);
  CHECK(loaded.report.stats.catalog_features == 4);
}

TEST_CASE("catalog class without features is a warning") {
  const auto loaded =
      load_catalog(R"({"version":1,"classes":[{"name":"Bot","features":[]}]})");
  REQUIRE(loaded.report.ok());
  REQUIRE(loaded.report.warnings.size() == 1);
  CHECK(loaded.report.warnings[0].code == "EmptyDomainSet");
  CHECK(loaded.report.warnings[0].subject == "Bot");
  CHECK(loaded.report.stats.empty_domain_classes == 1);
}

TEST_CASE("catalog errors") {
  CHECK(has_code(load_catalog(R"({"version":1,"classes":[)"
                              R"({"name":"A","aliases":["DoS"],"features":["x"]},)"
                              R"({"name":"B","aliases":["DoS"],"features":["y"]}]})")
                     .report.errors,
                 "AliasCollision"));
  CHECK(has_code(load_catalog(R"({"version":1,"classes":[)"
                              R"({"name":"A","features":["x"]},{"name":"a","features":["y"]}]})")
                     .report.errors,
                 "DuplicateClass"));
  CHECK(has_code(load_catalog(R"({"version":2,"classes":[]})").report.errors,
                 "UnsupportedVersion"));
  CHECK(has_code(load_catalog("{").report.errors, "ParseError"));
  CHECK(has_code(load_catalog(R"({"version":1,"classes":[{"name":"A","features":["x"," X"]}]})")
                     .report.errors,
                 "DuplicateFeature"));
  CHECK(has_code(load_catalog(R"({"version":1,"classes":[{"name":" ","features":["x"]}]})")
                     .report.errors,
                 "EmptyClassName"));
  CHECK_FALSE(load_catalog(R"({"version":2,"classes":[]})").catalog.has_value());
}

TEST_CASE("catalog serialization round trip") {
  const auto catalog = sample_catalog();
  const auto again = load_catalog(serialize_catalog(catalog));
  REQUIRE(again.report.ok());
  REQUIRE(again.catalog->classes().size() == 3);
  CHECK(again.catalog->classes()[0].aliases() == std::vector<std::string>{"DoS", "DDoS"});
  CHECK(again.catalog->classes()[0].attack_refs() == std::vector<std::string>{"T1498"});
  CHECK(again.catalog->classes()[1].features()[0].raw() == "Destination Port");
}

TEST_CASE("scope: alias, misclassification and benign") {
  const auto catalog = sample_catalog();
  std::vector<RankedAttribution> corpus{
      testutil::record("b", "DoS", "DoS", {{"x", 1}}),
      testutil::record("a", "ddos", "DDoS/DoS", {{"x", 1}}),
      testutil::record("c", "DoS", "Benign", {{"x", 1}}),
      testutil::record("d", "BENIGN", "BENIGN", {{"x", 1}}),
      testutil::record("e", "Heartbleed", "Heartbleed", {{"x", 1}}),
      testutil::record("f", "PortScan", std::nullopt, {{"x", 1}}),
  };
  const EvaluationScope scope = build_scope(corpus, catalog, EvaluationConfig{});
  REQUIRE(scope.classes.size() == 3);
  CHECK(scope.classes[0].class_name == "DDoS/DoS");
  CHECK(scope.classes[0].instances == std::vector<std::size_t>{1, 0});
  CHECK(scope.classes[1].instances.empty());
  CHECK(scope.benign == std::vector<std::string>{"d"});
  REQUIRE(scope.dropped.size() == 3);
  CHECK(scope.dropped[0].instance_id == "c");
  CHECK(scope.dropped[0].reason == DropReason::kMisclassified);
  CHECK(scope.dropped[1].reason == DropReason::kUnmappedClass);
  CHECK(scope.dropped[2].reason == DropReason::kMissingPrediction);
  CHECK(scope.scoped_count() == 2);

  EvaluationConfig all;
  all.scoping = ScopingRule::kTrueClassAll;
  const EvaluationScope wide = build_scope(corpus, catalog, all);
  CHECK(wide.classes[0].instances.size() == 3);
  CHECK(wide.classes[1].instances.size() == 1);
  CHECK(wide.dropped.size() == 1);
}

TEST_CASE("scope partitions the input") {
  const auto catalog = sample_catalog();
  std::vector<RankedAttribution> corpus;
  const char* labels[] = {"DoS", "PortScan", "Bot", "BENIGN", "Heartbleed"};
  for (int i = 0; i < 60; ++i) {
    const std::string t = labels[i % 5];
    const std::string p = labels[(i / 5) % 5];
    corpus.push_back(testutil::record("id" + std::to_string(i), t, p, {{"x", 1}}));
  }
  const EvaluationScope scope = build_scope(corpus, catalog, EvaluationConfig{});
  std::multiset<std::string> seen;
  for (const auto& c : scope.classes) {
    for (auto idx : c.instances) seen.insert(corpus[idx].instance_id());
  }
  for (const auto& b : scope.benign) seen.insert(b);
  for (const auto& d : scope.dropped) seen.insert(d.instance_id);
  CHECK(seen.size() == corpus.size());
  for (const auto& e : corpus) CHECK(seen.count(e.instance_id()) == 1);
}

TEST_CASE("cross validation warnings") {
  const auto catalog = sample_catalog();
  std::vector<RankedAttribution> corpus{
      testutil::record("a", "DoS", "DoS",
                       {{"ACK Flag Count", 0.3}, {"Flow Duration", 0.2}, {"SYN Flag Count", 0.1},
                        {"Destination Port", 0.1}, {"Total Fwd Packets", 0.1}}),
      testutil::record("b", "Heartbleed", "Heartbleed", {{"ack flag count", 0.3}}),
  };
  const ValidationReport report = cross_validate(corpus, catalog);
  CHECK(report.ok());
  REQUIRE(report.warnings.size() == 2);
  CHECK(report.warnings[0].code == "UnmappedClass");
  CHECK(report.warnings[0].subject == "Heartbleed");
  CHECK(report.warnings[1].code == "UnmatchedCatalogFeature");
  CHECK(report.warnings[1].subject == "PortScan: ttl variance");
  CHECK(report.stats.unmatched_catalog_features == 1);
  CHECK(report.stats.empty_domain_classes == 1);
  CHECK(report.stats.classes == 2);
}

TEST_CASE("read_file reports unreadable paths") {
  try {
    read_file("/nonexistent/featalign/input.jsonl");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

}  // TEST_SUITE
