#include <doctest.h>

#include <array>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/report.hpp"
#include "helpers.hpp"

using namespace featalign;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

std::size_t lines(const std::string& text) { return count(text, "\n"); }

MetricPoint point(Metric metric, Level level, std::string subject, int k, double value,
                  std::size_t support = 1, unsigned flags = 0) {
  MetricPoint p;
  p.metric = metric;
  p.level = level;
  p.subject = std::move(subject);
  p.k = k;
  p.value = value;
  p.support = support;
  p.flags = flags;
  return p;
}

ModelResult dataset_model(std::string name, const std::vector<int>& ks,
                          const std::vector<std::array<double, 3>>& rows) {
  ModelResult m;
  m.model = std::move(name);
  const Metric metrics[] = {Metric::kFap, Metric::kFar, Metric::kFaf1};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    for (int j = 0; j < 3; ++j) {
      m.points.push_back(point(metrics[j], Level::kDataset, "dataset", ks[i], rows[i][j], 7));
    }
  }
  return m;
}

CurveSeries curve(std::string subject, std::vector<SeriesPoint> pts,
                  std::vector<Marker> markers = {}) {
  CurveSeries s;
  s.metric = Metric::kFar;
  s.level = Level::kClass;
  s.subject = std::move(subject);
  s.points = std::move(pts);
  s.markers = std::move(markers);
  return s;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("two-decimal display rounding") {
  CHECK(format_2dp(2.0 / 3.0) == "0.67");
  CHECK(format_2dp(0.3) == "0.30");
  CHECK(format_2dp(0.125) == "0.13");
  CHECK(format_2dp(0.005) == "0.01");
  CHECK(format_2dp(0.994999) == "0.99");
  CHECK(format_2dp(0.995) == "1.00");
  CHECK(format_2dp(1.0) == "1.00");
  CHECK(format_2dp(0.0) == "0.00");
  CHECK(format_2dp(0.225) == "0.23");
}

TEST_CASE("full precision keeps every bit") {
  const double v = 2.0 / 3.0;
  CHECK(std::stod(format_full(v)) == v);
  CHECK(format_full(0.04) == "0.04");
}

TEST_CASE("comparison table layout") {
  const std::vector<int> ks{5, 10};
  const std::vector<ModelResult> models{
      dataset_model("RF", ks, {{0.09, 0.04, 0.06}, {0.07, 0.06, 0.07}}),
      dataset_model("DNN", ks, {{0.30, 0.18, 0.23}, {0.23, 0.25, 0.24}}),
  };
  const RenderedTable t = render_comparison_table(models, ks);
  CHECK(t.text ==
        "top-k | RF             | DNN\n"
        "      | FAP  FAR  FAF1 | FAP  FAR  FAF1\n"
        "    5 | 0.09 0.04 0.06 | 0.30 0.18 0.23\n"
        "   10 | 0.07 0.06 0.07 | 0.23 0.25 0.24\n");
  CHECK(t.delimited ==
        "k,RF:FAP,RF:FAR,RF:FAF1,DNN:FAP,DNN:FAR,DNN:FAF1\n"
        "5,0.09,0.04,0.06,0.3,0.18,0.23\n"
        "10,0.07,0.06,0.07,0.23,0.25,0.24\n");
}

TEST_CASE("table keeps full precision in the delimited twin") {
  const std::vector<int> ks{5};
  const std::vector<ModelResult> models{
      dataset_model("M", ks, {{2.0 / 3.0, 0.5, 0.25}})};
  const RenderedTable t = render_comparison_table(models, ks);
  CHECK(t.text.find("0.67 0.50 0.25") != std::string::npos);
  CHECK(t.delimited.find("0.6666666666666666") != std::string::npos);
}

TEST_CASE("missing cells are reported") {
  const std::vector<int> ks{5, 40};
  std::vector<ModelResult> models{dataset_model("modelX", {5}, {{0.1, 0.1, 0.1}})};
  try {
    render_comparison_table(models, ks);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIncompleteResults);
    CHECK(std::string(e.what()).find("modelX@40") != std::string::npos);
  }
}

TEST_CASE("delimited export rows") {
  ResultsDocument doc;
  ModelResult m;
  m.model = "M";
  m.points.push_back(point(Metric::kFap, Level::kDataset, "dataset", 5, 0.25, 3));
  doc.models.push_back(m);
  const std::string csv = export_results(doc, ExportFormat::kDelimited);
  CHECK(csv ==
        "model,metric,level,subject,k,value,support\n"
        "M,FAP,dataset,dataset,5,0.25,3\n");
}

TEST_CASE("delimited export cardinality and determinism") {
  ResultsDocument doc;
  ModelResult m;
  m.model = "M";
  for (Metric metric : {Metric::kFap, Metric::kFar, Metric::kFaf1}) {
    for (const char* cls : {"DDoS/DoS", "Port,Scan"}) {
      for (int k : {5, 10, 20, 40}) {
        m.points.push_back(point(metric, Level::kClass, cls, k, k / 100.0, 4));
      }
    }
  }
  doc.models.push_back(m);
  const std::string csv = export_results(doc, ExportFormat::kDelimited);
  CHECK(lines(csv) == 25);
  CHECK(csv.find("\"Port,Scan\"") != std::string::npos);
  CHECK(export_results(doc, ExportFormat::kDelimited) == csv);
  CHECK(export_results(doc, ExportFormat::kStructured) ==
        export_results(doc, ExportFormat::kStructured));
}

TEST_CASE("structured export round trip") {
  ResultsDocument doc;
  doc.config.k_values = {1, 7};
  doc.config.aggregation = Aggregation::parse("trimmed:0.1");
  doc.config.benign_labels = {"benign", "normal"};
  doc.config.levels = kLevelClass | kLevelDataset;
  ModelResult m;
  m.model = "DNN";
  m.stats.instances = 11;
  m.scope.scoped = 9;
  m.scope.benign = 1;
  m.scope.dropped["Misclassified"] = 1;
  m.unscoped_classes = {"Bot"};
  m.points.push_back(point(Metric::kFaf1, Level::kClass, "PortScan", 7, 1.0 / 3.0, 4,
                           kFlagDegenerateExplanation));
  m.points.push_back(point(Metric::kFar, Level::kClass, "Bot", 1, 0.0, 2, kFlagEmptyDomainSet));
  m.points.push_back(point(Metric::kFap, Level::kDataset, "dataset", 1, 0.1 + 0.2, 6));
  doc.models.push_back(m);

  const std::string text = export_results(doc, ExportFormat::kStructured);
  CHECK(text.find("\"aggregation\": \"trimmed:0.1\"") != std::string::npos);
  const ResultsDocument back = parse_structured_results(text);
  REQUIRE(back.models.size() == 1);
  CHECK(back.models[0].points == m.points);
  CHECK(back.models[0].model == "DNN");
  CHECK(back.models[0].scope == m.scope);
  CHECK(back.models[0].unscoped_classes == m.unscoped_classes);
  CHECK(back.models[0].stats.instances == 11);
  CHECK(back.config.k_values == doc.config.k_values);
  CHECK(back.config.aggregation.alpha == doc.config.aggregation.alpha);
  CHECK(back.config.benign_labels == doc.config.benign_labels);
  CHECK(back.config.levels == doc.config.levels);
  CHECK(export_results(back, ExportFormat::kStructured) == text);
}

TEST_CASE("structured parse rejects foreign documents") {
  CHECK_THROWS_AS(parse_structured_results("{}"), Error);
  CHECK_THROWS_AS(parse_structured_results("not json"), Error);
}

TEST_CASE("chart cardinality") {
  const std::vector<CurveSeries> s{curve("A", {{1, 0.1}, {2, 0.2}}),
                                   curve("B", {{1, 0.0}, {2, 0.5}}),
                                   curve("C", {{1, 0.3}, {2, 0.3}})};
  std::vector<LabeledSeries> labeled;
  for (const auto& c : s) labeled.push_back({c.subject, &c});
  const std::string svg = render_metric_chart("FAR", "FAR", labeled, ChartStyle{});
  CHECK(count(svg, "<polyline") == 3);
  CHECK(count(svg, "class=\"legend-entry\"") == 3);
  CHECK(count(svg, "class=\"marker\"") == 0);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(render_metric_chart("FAR", "FAR", labeled, ChartStyle{}) == svg);
}

TEST_CASE("a single point draws no segment") {
  const CurveSeries s = curve("A", {{5, 0.4}});
  const std::vector<LabeledSeries> labeled{{"A", &s}};
  const std::string svg = render_metric_chart("t", "FAR", labeled, ChartStyle{});
  CHECK(count(svg, "<polyline") == 0);
  CHECK(count(svg, "class=\"point\"") == 1);
}

TEST_CASE("markers become labeled reference lines") {
  const CurveSeries s = curve("DDoS/DoS", {{9, 0.8}, {10, 0.9}, {11, 0.9}}, {{10, "k=10"}});
  const std::vector<LabeledSeries> labeled{{"DDoS/DoS", &s}};
  const std::string svg = render_metric_chart("t", "FAR", labeled, ChartStyle{});
  CHECK(count(svg, "class=\"marker\"") == 1);
  CHECK(svg.find(">k=10</text>") != std::string::npos);

  TradeoffCurve t;
  t.subject = "DDoS/DoS";
  t.points = {{9, 0.8, 0.9}, {10, 0.9, 0.9}, {11, 0.9, 0.8}};
  t.markers = {{10, "k=10"}};
  const std::vector<LabeledTradeoff> curves{{"DDoS/DoS", &t}};
  const std::string tsvg = render_tradeoff_chart("t", curves, ChartStyle{});
  CHECK(count(tsvg, "class=\"marker\"") == 1);
  CHECK(tsvg.find("data-k=\"10\"") != std::string::npos);
  CHECK(tsvg.find(">k=10</text>") != std::string::npos);
}

TEST_CASE("text is escaped in charts") {
  const CurveSeries s = curve("<A&B>", {{1, 0.1}, {2, 0.2}});
  const std::vector<LabeledSeries> labeled{{s.subject, &s}};
  const std::string svg = render_metric_chart("t", "FAR", labeled, ChartStyle{});
  CHECK(svg.find("<A&B>") == std::string::npos);
  CHECK(svg.find("&lt;A&amp;B&gt;") != std::string::npos);
}

TEST_CASE("render_curves file set") {
  ModelSweep ms;
  ms.model = "M";
  ms.sweep.k_values = {1, 2};
  for (Metric metric : {Metric::kFap, Metric::kFar, Metric::kFaf1}) {
    CurveSeries c = curve("DDoS/DoS", {{1, 0.5}, {2, 0.5}});
    c.metric = metric;
    ms.sweep.series.push_back(c);
    CurveSeries d = c;
    d.level = Level::kDataset;
    d.subject = "dataset";
    ms.sweep.series.push_back(d);
  }
  TradeoffCurve t;
  t.subject = "DDoS/DoS";
  t.points = {{1, 0.5, 0.5}, {2, 0.5, 0.5}};
  ms.tradeoffs.push_back(t);
  const std::vector<ModelSweep> sweeps{ms};
  const auto docs = render_curves(sweeps);
  std::vector<std::string> names;
  for (const auto& d : docs) names.push_back(d.name);
  CHECK(names == std::vector<std::string>{"fap_class.svg", "far_class.svg", "faf1_class.svg",
                                          "fap_dataset.svg", "far_dataset.svg",
                                          "faf1_dataset.svg", "tradeoff_ddos_dos.svg"});
}

TEST_CASE("slugs and CSV escaping") {
  CHECK(slugify("DDoS/DoS") == "ddos_dos");
  CHECK(slugify("Web Attack \xE2\x80\x93 XSS") == "web_attack_xss");
  CHECK(slugify("///") == "unnamed");
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("scope summary counts drops by reason") {
  EvaluationScope scope;
  scope.classes.push_back({0, "A", {0, 1}});
  scope.benign = {"x"};
  scope.dropped = {{"p", DropReason::kMisclassified}, {"q", DropReason::kMisclassified},
                   {"r", DropReason::kUnmappedClass}};
  const ScopeSummary s = ScopeSummary::from(scope);
  CHECK(s.scoped == 2);
  CHECK(s.benign == 1);
  CHECK(s.dropped.at("Misclassified") == 2);
  CHECK(s.dropped.at("UnmappedClass") == 1);
}

}  // TEST_SUITE
