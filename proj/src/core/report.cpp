#include "core/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace featalign {

using ojson = nlohmann::ordered_json;

std::string format_full(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_2dp(double value) {
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof(buf), std::fabs(value),
                           std::chars_format::fixed);
  std::string digits(buf, res.ptr);
  const bool negative = std::signbit(value) && value != 0.0;

  std::string int_part = digits;
  std::string frac;
  if (auto dot = digits.find('.'); dot != std::string::npos) {
    int_part = digits.substr(0, dot);
    frac = digits.substr(dot + 1);
  }
  frac.resize(std::max<std::size_t>(frac.size(), 3), '0');
  const bool round_up = frac[2] >= '5';
  // Work on the integer number of hundredths as a decimal string.
  std::string hundredths = int_part + frac.substr(0, 2);
  if (round_up) {
    int i = static_cast<int>(hundredths.size()) - 1;
    for (; i >= 0; --i) {
      if (hundredths[i] == '9') {
        hundredths[i] = '0';
      } else {
        ++hundredths[i];
        break;
      }
    }
    if (i < 0) hundredths.insert(hundredths.begin(), '1');
  }
  std::string whole = hundredths.substr(0, hundredths.size() - 2);
  whole.erase(0, std::min(whole.find_first_not_of('0'), whole.size() - 1));
  if (whole.empty()) whole = "0";
  std::string out = whole + "." + hundredths.substr(hundredths.size() - 2);
  if (negative && out != "0.00") out.insert(out.begin(), '-');
  return out;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string slugify(std::string_view text) {
  std::string out;
  bool pending = false;
  for (unsigned char c : text) {
    if (std::isalnum(c) && c < 0x80) {
      if (pending && !out.empty()) out += '_';
      pending = false;
      out += static_cast<char>(std::tolower(c));
    } else {
      pending = true;
    }
  }
  return out.empty() ? "unnamed" : out;
}

ScopeSummary ScopeSummary::from(const EvaluationScope& scope) {
  ScopeSummary s;
  s.scoped = scope.scoped_count();
  s.benign = scope.benign.size();
  for (const auto& d : scope.dropped) ++s.dropped[std::string(to_string(d.reason))];
  return s;
}

namespace {

const MetricPoint* find_dataset_point(const ModelResult& m, Metric metric, int k) {
  for (const auto& p : m.points) {
    if (p.level == Level::kDataset && p.metric == metric && p.k == k) return &p;
  }
  return nullptr;
}

constexpr Metric kMetrics[] = {Metric::kFap, Metric::kFar, Metric::kFaf1};

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string rtrim(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

RenderedTable render_comparison_table(std::span<const ModelResult> models,
                                      std::span<const int> k_values) {
  std::vector<std::string> gaps;
  for (const auto& m : models) {
    for (int k : k_values) {
      for (Metric metric : kMetrics) {
        if (find_dataset_point(m, metric, k) == nullptr) {
          gaps.push_back(m.model + "@" + std::to_string(k));
          break;
        }
      }
    }
  }
  if (!gaps.empty()) {
    std::string list;
    for (const auto& g : gaps) list += (list.empty() ? "" : ", ") + g;
    throw Error(ErrorCode::kIncompleteResults, "missing results for " + list);
  }

  constexpr std::string_view kHeader = "FAP  FAR  FAF1";
  std::size_t k_width = std::string_view("top-k").size();
  for (int k : k_values) k_width = std::max(k_width, std::to_string(k).size());

  std::vector<std::size_t> widths;
  for (const auto& m : models) widths.push_back(std::max(kHeader.size(), m.model.size()));

  std::string line1 = pad_right("top-k", k_width);
  std::string line2 = pad_right("", k_width);
  for (std::size_t i = 0; i < models.size(); ++i) {
    line1 += " | " + pad_right(models[i].model, widths[i]);
    line2 += " | " + pad_right(std::string(kHeader), widths[i]);
  }
  std::string text = rtrim(line1) + "\n" + rtrim(line2) + "\n";

  std::string csv = "k";
  for (const auto& m : models) {
    for (Metric metric : kMetrics) {
      csv += "," + csv_escape(m.model + ":" + std::string(to_string(metric)));
    }
  }
  csv += "\n";

  for (int k : k_values) {
    std::string row = pad_left(std::to_string(k), k_width);
    std::string csv_row = std::to_string(k);
    for (std::size_t i = 0; i < models.size(); ++i) {
      std::string cell;
      for (Metric metric : kMetrics) {
        const double v = find_dataset_point(models[i], metric, k)->value;
        cell += (cell.empty() ? "" : " ") + format_2dp(v);
        csv_row += "," + format_full(v);
      }
      row += " | " + pad_right(cell, widths[i]);
    }
    text += rtrim(row) + "\n";
    csv += csv_row + "\n";
  }
  return {text, csv};
}

namespace {

ojson config_to_json(const EvaluationConfig& c) {
  ojson levels = ojson::array();
  if (c.levels & kLevelInstance) levels.push_back("instance");
  if (c.levels & kLevelClass) levels.push_back("class");
  if (c.levels & kLevelDataset) levels.push_back("dataset");
  return ojson{{"ranking", to_string(c.ranking)},
               {"scope", to_string(c.scoping)},
               {"k_values", c.k_values},
               {"aggregation", c.aggregation.to_string()},
               {"empty_set_policy", to_string(c.empty_set_policy)},
               {"benign_labels", c.benign_labels},
               {"levels", std::move(levels)}};
}

EvaluationConfig config_from_json(const ojson& j) {
  EvaluationConfig c;
  c.ranking = parse_ranking_rule(j.at("ranking").get<std::string>());
  c.scoping = parse_scoping_rule(j.at("scope").get<std::string>());
  c.k_values = j.at("k_values").get<std::vector<int>>();
  c.aggregation = Aggregation::parse(j.at("aggregation").get<std::string>());
  c.empty_set_policy = parse_empty_set_policy(j.at("empty_set_policy").get<std::string>());
  c.benign_labels = j.at("benign_labels").get<std::vector<std::string>>();
  c.levels = 0;
  for (const auto& l : j.at("levels")) {
    switch (parse_level(l.get<std::string>())) {
      case Level::kInstance: c.levels |= kLevelInstance; break;
      case Level::kClass: c.levels |= kLevelClass; break;
      case Level::kDataset: c.levels |= kLevelDataset; break;
    }
  }
  return c;
}

ojson stats_to_json(const ValidationStats& s) {
  return ojson{{"instances", s.instances},
               {"pre_ranked_instances", s.pre_ranked_instances},
               {"classes", s.classes},
               {"features", s.features},
               {"catalog_classes", s.catalog_classes},
               {"catalog_features", s.catalog_features},
               {"unmatched_catalog_features", s.unmatched_catalog_features},
               {"empty_domain_classes", s.empty_domain_classes}};
}

ValidationStats stats_from_json(const ojson& j) {
  ValidationStats s;
  s.instances = j.at("instances").get<std::size_t>();
  s.pre_ranked_instances = j.at("pre_ranked_instances").get<std::size_t>();
  s.classes = j.at("classes").get<std::size_t>();
  s.features = j.at("features").get<std::size_t>();
  s.catalog_classes = j.at("catalog_classes").get<std::size_t>();
  s.catalog_features = j.at("catalog_features").get<std::size_t>();
  s.unmatched_catalog_features = j.at("unmatched_catalog_features").get<std::size_t>();
  s.empty_domain_classes = j.at("empty_domain_classes").get<std::size_t>();
  return s;
}

ojson flags_to_json(unsigned flags) {
  ojson out = ojson::array();
  if (flags & kFlagEmptyDomainSet) out.push_back("EmptyDomainSet");
  if (flags & kFlagDegenerateExplanation) out.push_back("DegenerateExplanation");
  return out;
}

unsigned flags_from_json(const ojson& j) {
  unsigned flags = 0;
  for (const auto& f : j) {
    const std::string s = f.get<std::string>();
    if (s == "EmptyDomainSet") flags |= kFlagEmptyDomainSet;
    else if (s == "DegenerateExplanation") flags |= kFlagDegenerateExplanation;
    else throw Error(ErrorCode::kParse, "unknown flag '" + s + "'");
  }
  return flags;
}

}  // namespace

std::string export_results(const ResultsDocument& doc, ExportFormat format) {
  if (format == ExportFormat::kDelimited) {
    std::string out = "model,metric,level,subject,k,value,support\n";
    for (const auto& m : doc.models) {
      const std::string model = csv_escape(m.model);
      for (const auto& p : m.points) {
        out += model;
        out += ',';
        out += to_string(p.metric);
        out += ',';
        out += to_string(p.level);
        out += ',';
        out += csv_escape(p.subject);
        out += ',' + std::to_string(p.k) + ',' + format_full(p.value) + ',' +
               std::to_string(p.support) + '\n';
      }
    }
    return out;
  }

  ojson models = ojson::array();
  for (const auto& m : doc.models) {
    ojson points = ojson::array();
    for (const auto& p : m.points) {
      points.push_back(ojson{{"metric", to_string(p.metric)},
                             {"level", to_string(p.level)},
                             {"subject", p.subject},
                             {"k", p.k},
                             {"value", p.value},
                             {"support", p.support},
                             {"flags", flags_to_json(p.flags)}});
    }
    models.push_back(ojson{{"name", m.model},
                           {"validation", stats_to_json(m.stats)},
                           {"scope", ojson{{"scoped", m.scope.scoped},
                                           {"benign", m.scope.benign},
                                           {"dropped", m.scope.dropped}}},
                           {"unscoped_classes", m.unscoped_classes},
                           {"points", std::move(points)}});
  }
  ojson root{{"format", "featalign-results"},
             {"version", 1},
             {"config", config_to_json(doc.config)},
             {"models", std::move(models)}};
  return root.dump(2) + "\n";
}

ResultsDocument parse_structured_results(std::string_view text) {
  try {
    const ojson root = ojson::parse(text);
    if (root.at("format") != "featalign-results" || root.at("version") != 1) {
      throw Error(ErrorCode::kParse, "not a featalign results document");
    }
    ResultsDocument doc;
    doc.config = config_from_json(root.at("config"));
    for (const auto& m : root.at("models")) {
      ModelResult r;
      r.model = m.at("name").get<std::string>();
      r.stats = stats_from_json(m.at("validation"));
      const auto& scope = m.at("scope");
      r.scope.scoped = scope.at("scoped").get<std::size_t>();
      r.scope.benign = scope.at("benign").get<std::size_t>();
      r.scope.dropped = scope.at("dropped").get<std::map<std::string, std::size_t>>();
      r.unscoped_classes = m.at("unscoped_classes").get<std::vector<std::string>>();
      for (const auto& p : m.at("points")) {
        MetricPoint point;
        point.metric = parse_metric(p.at("metric").get<std::string>());
        point.level = parse_level(p.at("level").get<std::string>());
        point.subject = p.at("subject").get<std::string>();
        point.k = p.at("k").get<int>();
        point.value = p.at("value").get<double>();
        point.support = p.at("support").get<std::size_t>();
        point.flags = flags_from_json(p.at("flags"));
        r.points.push_back(std::move(point));
      }
      doc.models.push_back(std::move(r));
    }
    return doc;
  } catch (const ojson::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed results document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// SVG

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  std::string s(buf, res.ptr);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Plot area and axis mapping shared by both chart kinds.
class Canvas {
 public:
  Canvas(const ChartStyle& style, double x_min, double x_max)
      : style_(style), x_min_(x_min), x_max_(x_max) {}

  double left() const { return style_.margin_left; }
  double right() const { return style_.width - style_.margin_right; }
  double top() const { return style_.margin_top; }
  double bottom() const { return style_.height - style_.margin_bottom; }

  double x(double v) const {
    if (x_max_ == x_min_) return (left() + right()) / 2.0;
    return left() + (v - x_min_) / (x_max_ - x_min_) * (right() - left());
  }
  double y(double v) const { return bottom() - v * (bottom() - top()); }

  const std::string& color(std::size_t i) const {
    return style_.palette[i % style_.palette.size()];
  }

  void open(std::ostringstream& out, std::string_view title) const {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style_.width
        << "\" height=\"" << style_.height << "\" viewBox=\"0 0 " << style_.width << " "
        << style_.height << "\" font-family=\"" << xml_escape(style_.font_family)
        << "\" font-size=\"" << style_.font_size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text class=\"title\" x=\"" << fmt((left() + right()) / 2.0) << "\" y=\""
        << fmt(top() / 2.0 + style_.font_size / 2.0)
        << "\" text-anchor=\"middle\" font-weight=\"bold\">" << xml_escape(title)
        << "</text>\n";
  }

  void axes(std::ostringstream& out, std::string_view x_label, std::string_view y_label,
            const std::vector<double>& x_ticks, bool integer_x) const {
    out << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << fmt(left()) << "\" y1=\"" << fmt(bottom()) << "\" x2=\""
        << fmt(right()) << "\" y2=\"" << fmt(bottom()) << "\"/>\n";
    out << "<line x1=\"" << fmt(left()) << "\" y1=\"" << fmt(top()) << "\" x2=\""
        << fmt(left()) << "\" y2=\"" << fmt(bottom()) << "\"/>\n";
    out << "</g>\n<g class=\"ticks\" fill=\"black\">\n";
    for (int i = 0; i <= 5; ++i) {
      const double v = i / 5.0;
      out << "<line x1=\"" << fmt(left() - 4) << "\" y1=\"" << fmt(y(v)) << "\" x2=\""
          << fmt(left()) << "\" y2=\"" << fmt(y(v)) << "\" stroke=\"black\"/>\n";
      out << "<text x=\"" << fmt(left() - 8) << "\" y=\"" << fmt(y(v) + 4)
          << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
    }
    for (double t : x_ticks) {
      out << "<line x1=\"" << fmt(x(t)) << "\" y1=\"" << fmt(bottom()) << "\" x2=\""
          << fmt(x(t)) << "\" y2=\"" << fmt(bottom() + 4) << "\" stroke=\"black\"/>\n";
      out << "<text x=\"" << fmt(x(t)) << "\" y=\"" << fmt(bottom() + 18)
          << "\" text-anchor=\"middle\">"
          << (integer_x ? std::to_string(static_cast<long long>(t)) : fmt(t))
          << "</text>\n";
    }
    out << "</g>\n";
    out << "<text class=\"x-label\" x=\"" << fmt((left() + right()) / 2.0) << "\" y=\""
        << fmt(bottom() + 40) << "\" text-anchor=\"middle\">" << xml_escape(x_label)
        << "</text>\n";
    out << "<text class=\"y-label\" x=\"" << fmt(16) << "\" y=\""
        << fmt((top() + bottom()) / 2.0) << "\" text-anchor=\"middle\" transform=\"rotate(-90 "
        << fmt(16) << " " << fmt((top() + bottom()) / 2.0) << ")\">" << xml_escape(y_label)
        << "</text>\n";
  }

  // A polyline only when there are at least two points; single points are
  // still drawn as dots.
  void curve(std::ostringstream& out, std::size_t index, std::string_view label,
             const std::vector<std::pair<double, double>>& pts) const {
    out << "<g class=\"series\" data-label=\"" << xml_escape(label) << "\" stroke=\""
        << color(index) << "\" fill=\"" << color(index) << "\">\n";
    if (pts.size() >= 2) {
      out << "<polyline fill=\"none\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        out << (i ? " " : "") << fmt(x(pts[i].first)) << "," << fmt(y(pts[i].second));
      }
      out << "\"/>\n";
    }
    for (const auto& [px, py] : pts) {
      out << "<circle class=\"point\" cx=\"" << fmt(x(px)) << "\" cy=\"" << fmt(y(py))
          << "\" r=\"2.5\"/>\n";
    }
    out << "</g>\n";
  }

  // Dashed vertical reference line at pixel column px.
  void marker(std::ostringstream& out, std::size_t index, int k, double px,
              std::string_view text) const {
    out << "<g class=\"marker\" data-k=\"" << k << "\" stroke=\"" << color(index)
        << "\"><line x1=\"" << fmt(px) << "\" y1=\"" << fmt(bottom()) << "\" x2=\""
        << fmt(px) << "\" y2=\"" << fmt(top()) << "\" stroke-dasharray=\"4 3\"/>"
        << "<text x=\"" << fmt(px + 4) << "\" y=\""
        << fmt(top() + 12 + 14.0 * static_cast<double>(index))
        << "\" stroke=\"none\" fill=\"" << color(index) << "\">" << xml_escape(text)
        << "</text></g>\n";
  }

  void legend(std::ostringstream& out, const std::vector<std::string>& labels) const {
    out << "<g class=\"legend\">\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const double ly = top() + 8 + i * (style_.font_size + 8);
      const double lx = right() + 16;
      out << "<g class=\"legend-entry\"><line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly)
          << "\" x2=\"" << fmt(lx + 20) << "\" y2=\"" << fmt(ly) << "\" stroke=\""
          << color(i) << "\" stroke-width=\"2\"/><text x=\"" << fmt(lx + 26) << "\" y=\""
          << fmt(ly + 4) << "\">" << xml_escape(labels[i]) << "</text></g>\n";
    }
    out << "</g>\n";
  }

 private:
  const ChartStyle& style_;
  double x_min_;
  double x_max_;
};

std::vector<double> k_ticks(int lo, int hi) {
  const int span = hi - lo;
  int step = 1;
  for (int candidate : {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000}) {
    step = candidate;
    if (span / candidate <= 10) break;
  }
  std::vector<double> ticks;
  const int first = ((lo + step - 1) / step) * step;
  if (first != lo) ticks.push_back(lo);
  for (int t = first; t <= hi; t += step) ticks.push_back(t);
  return ticks;
}

}  // namespace

std::string render_metric_chart(std::string_view title, std::string_view y_label,
                                std::span<const LabeledSeries> series,
                                const ChartStyle& style) {
  int lo = 0;
  int hi = 0;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& p : s.series->points) {
      lo = any ? std::min(lo, p.k) : p.k;
      hi = any ? std::max(hi, p.k) : p.k;
      any = true;
    }
  }
  if (!any) lo = hi = 1;

  Canvas canvas(style, lo, hi);
  std::ostringstream out;
  canvas.open(out, title);
  canvas.axes(out, "k", y_label, k_ticks(lo, hi), true);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : series[i].series->points) pts.emplace_back(p.k, p.value);
    canvas.curve(out, i, series[i].label, pts);
    labels.push_back(series[i].label);
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (const auto& m : series[i].series->markers) {
      if (m.k < lo || m.k > hi) continue;
      const std::string text =
          series.size() > 1 ? m.label + " (" + series[i].label + ")" : m.label;
      canvas.marker(out, i, m.k, canvas.x(m.k), text);
    }
  }
  canvas.legend(out, labels);
  out << "</svg>\n";
  return out.str();
}

std::string render_tradeoff_chart(std::string_view title,
                                  std::span<const LabeledTradeoff> curves,
                                  const ChartStyle& style) {
  Canvas canvas(style, 0.0, 1.0);
  std::ostringstream out;
  canvas.open(out, title);
  canvas.axes(out, "FAR", "FAP", {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}, false);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : curves[i].curve->points) pts.emplace_back(p.far, p.fap);
    canvas.curve(out, i, curves[i].label, pts);
    labels.push_back(curves[i].label);
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (const auto& m : curves[i].curve->markers) {
      auto it = std::find_if(curves[i].curve->points.begin(), curves[i].curve->points.end(),
                             [&](const TradeoffPoint& p) { return p.k == m.k; });
      if (it == curves[i].curve->points.end()) continue;
      const std::string text =
          curves.size() > 1 ? m.label + " (" + curves[i].label + ")" : m.label;
      canvas.marker(out, i, m.k, canvas.x(it->far), text);
    }
  }
  canvas.legend(out, labels);
  out << "</svg>\n";
  return out.str();
}

std::vector<SvgDocument> render_curves(std::span<const ModelSweep> sweeps,
                                       const ChartStyle& style) {
  std::vector<SvgDocument> docs;
  const bool multi = sweeps.size() > 1;

  for (Level level : {Level::kClass, Level::kDataset}) {
    for (Metric metric : kMetrics) {
      std::vector<LabeledSeries> series;
      for (const auto& ms : sweeps) {
        for (const auto& s : ms.sweep.series) {
          if (s.metric != metric || s.level != level) continue;
          std::string label;
          if (level == Level::kDataset) {
            label = multi ? ms.model : "dataset";
          } else {
            label = multi ? ms.model + ": " + s.subject : s.subject;
          }
          series.push_back({std::move(label), &s});
        }
      }
      const std::string metric_name(to_string(metric));
      const std::string title = std::string(to_string(level)) + "-level " + metric_name +
                                " vs k";
      std::string name = metric_name + "_" + std::string(to_string(level)) + ".svg";
      std::transform(name.begin(), name.end(), name.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      docs.push_back({name, render_metric_chart(title, metric_name, series, style)});
    }
  }

  // Trade-off charts, one per class, in first-seen order.
  std::vector<std::string> subjects;
  for (const auto& ms : sweeps) {
    for (const auto& t : ms.tradeoffs) {
      if (std::find(subjects.begin(), subjects.end(), t.subject) == subjects.end()) {
        subjects.push_back(t.subject);
      }
    }
  }
  std::set<std::string> used_names;
  for (const auto& subject : subjects) {
    std::vector<LabeledTradeoff> curves;
    for (const auto& ms : sweeps) {
      for (const auto& t : ms.tradeoffs) {
        if (t.subject == subject) curves.push_back({multi ? ms.model : subject, &t});
      }
    }
    std::string name = "tradeoff_" + slugify(subject);
    std::string unique = name;
    for (int n = 2; !used_names.insert(unique).second; ++n) {
      unique = name + "_" + std::to_string(n);
    }
    docs.push_back({unique + ".svg",
                    render_tradeoff_chart(subject + ": FAP vs FAR", curves, style)});
  }
  return docs;
}

std::string export_curves_csv(std::span<const ModelSweep> sweeps) {
  std::string out = "model,metric,level,subject,k,value\n";
  for (const auto& ms : sweeps) {
    for (const auto& s : ms.sweep.series) {
      for (const auto& p : s.points) {
        out += csv_escape(ms.model) + "," + std::string(to_string(s.metric)) + "," +
               std::string(to_string(s.level)) + "," + csv_escape(s.subject) + "," +
               std::to_string(p.k) + "," + format_full(p.value) + "\n";
      }
    }
  }
  return out;
}

std::string export_tradeoff_csv(std::span<const ModelSweep> sweeps) {
  std::string out = "model,subject,k,far,fap,marker\n";
  for (const auto& ms : sweeps) {
    for (const auto& t : ms.tradeoffs) {
      for (const auto& p : t.points) {
        std::string marker;
        for (const auto& m : t.markers) {
          if (m.k == p.k) marker = m.label;
        }
        out += csv_escape(ms.model) + "," + csv_escape(t.subject) + "," +
               std::to_string(p.k) + "," + format_full(p.far) + "," + format_full(p.fap) +
               "," + csv_escape(marker) + "\n";
      }
    }
  }
  return out;
}

std::string export_summary_csv(std::span<const ModelSweep> sweeps) {
  std::string out =
      "model,subject,expected_count,far_saturation_k,far_max,peak_faf1_k,peak_faf1\n";
  for (const auto& ms : sweeps) {
    for (const auto& s : ms.sweep.summaries) {
      out += csv_escape(ms.model) + "," + csv_escape(s.subject) + "," +
             std::to_string(s.expected_count) + "," + std::to_string(s.far_saturation_k) +
             "," + format_full(s.far_max) + "," + std::to_string(s.peak_faf1_k) + "," +
             format_full(s.peak_faf1) + "\n";
    }
  }
  return out;
}

}  // namespace featalign
