// Randomized checks of the invariants that hold for every input.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "core/ingest.hpp"
#include "core/metrics.hpp"
#include "core/sweep.hpp"
#include "core/synth.hpp"
#include "helpers.hpp"

using namespace featalign;
using featalign::synth::Rng;

namespace {

constexpr RankingRule kRules[] = {RankingRule::kAbsolute, RankingRule::kSigned,
                                  RankingRule::kPositiveOnly};

std::string random_name(Rng& rng) {
  static const char* const kPieces[] = {"Flow", " ", "  ", "\t", "Dur", "IAT", "e\xCC\x81",
                                        "\xC3\xA9", "\xC2\xA0", "ACK", "x", "\xE2\x80\x83",
                                        "\xC3\x84", "A\xCC\x88", "Max", "-", "/"};
  std::string s;
  const auto n = 1 + rng.below(6);
  for (std::uint64_t i = 0; i < n; ++i) s += kPieces[rng.below(std::size(kPieces))];
  return s + "q";  // never blank
}

// Several classes with different domain sets and a mixed corpus.
struct RandomWorld {
  DomainFeatureCatalog catalog{1, {}};
  std::vector<RankedAttribution> corpus;
};

RandomWorld random_world(std::uint64_t seed, std::size_t n_instances) {
  Rng rng(seed);
  const std::size_t universe = 40;
  std::vector<DomainFeatureSet> sets;
  const char* names[] = {"A", "B", "C", "D"};
  for (int c = 0; c < 4; ++c) {
    std::vector<FeatureName> features;
    const auto size = c == 3 ? 0 : 1 + rng.below(12);
    std::vector<std::size_t> pool(universe);
    for (std::size_t i = 0; i < universe; ++i) pool[i] = i;
    rng.shuffle(pool);
    for (std::uint64_t i = 0; i < size; ++i) {
      features.push_back(canonicalize(synth::feature_label(pool[i], universe)));
    }
    sets.emplace_back(names[c], std::vector<std::string>{}, std::vector<std::string>{},
                      std::move(features));
  }
  RandomWorld w{DomainFeatureCatalog(1, std::move(sets)), {}};
  const char* labels[] = {"A", "B", "C", "D", "benign", "Z"};
  for (std::size_t i = 0; i < n_instances; ++i) {
    const std::string t = labels[rng.below(6)];
    const std::string p = rng.below(5) == 0 ? labels[rng.below(6)] : t;
    const auto n = 1 + rng.below(universe);
    std::vector<std::size_t> pool(universe);
    for (std::size_t j = 0; j < universe; ++j) pool[j] = j;
    rng.shuffle(pool);
    std::vector<Attribution> entries;
    for (std::uint64_t j = 0; j < n; ++j) {
      entries.push_back({canonicalize(synth::feature_label(pool[j], universe)),
                         (static_cast<double>(rng.below(21)) - 10.0) / 4.0});
    }
    w.corpus.emplace_back("r" + std::to_string(rng.next() % 100000) + "-" + std::to_string(i),
                          t, p, std::move(entries));
  }
  return w;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("canonicalize is idempotent and deterministic") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::string raw = random_name(rng);
    const FeatureName once = canonicalize(raw);
    CHECK(canonicalize(once.canonical()).canonical() == once.canonical());
    CHECK(canonicalize(raw).canonical() == once.canonical());
    CHECK_FALSE(once.canonical().empty());
    CHECK(once.canonical().front() != ' ');
    CHECK(once.canonical().back() != ' ');
    CHECK(once.canonical().find("  ") == std::string::npos);
  }
}

TEST_CASE("top_k prefix property") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto s = synth::gen_general(1 + seed % 40, 3, 60, seed);
    for (RankingRule rule : kRules) {
      const auto full = s.explanation.ranked(rule);
      for (int k = 1; k <= 45; k += 4) {
        const auto top = top_k(s.explanation, k, rule);
        REQUIRE(top.size() == std::min<std::size_t>(k, full.size()));
        CHECK(std::equal(top.begin(), top.end(), full.begin()));
      }
    }
  }
}

TEST_CASE("instance metric bounds, integrality and the harmonic identity") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto s = synth::gen_general(1 + seed % 50, seed % 21, 70, seed * 7 + 1);
    std::vector<int> ks;
    for (int k = 1; k <= 50; ++k) ks.push_back(k);
    const auto rows = alignment_counts(s.explanation, s.domain, ks, kRules[seed % 3]);
    double previous_far = 0.0;
    for (const auto& a : rows) {
      const double fap = fap_instance(a);
      const double far = far_instance(a);
      const double faf1 = faf1_instance(a);
      CHECK(a.overlap <= std::min(a.explained, a.expected));
      CHECK(a.explained <= static_cast<std::size_t>(a.k));
      for (double v : {fap, far, faf1}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
      CHECK(std::fabs(fap * a.explained - std::round(fap * a.explained)) < 1e-9);
      CHECK(std::fabs(far * a.expected - std::round(far * a.expected)) < 1e-9);
      if (a.overlap > 0) {
        CHECK(std::fabs(faf1 - 2 * fap * far / (fap + far)) <= 1e-12);
      } else {
        CHECK(faf1 == 0.0);
      }
      CHECK(far >= previous_far);
      previous_far = far;
    }
  }
}

TEST_CASE("kernel matches the naive oracle") {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = synth::gen_general(1 + rng.below(100), rng.below(21), 120, rng.next());
    const int k = 1 + static_cast<int>(rng.below(50));
    const RankingRule rule = kRules[rng.below(3)];
    const std::vector<int> ks{k};
    const auto a = alignment_counts(s.explanation, s.domain, ks, rule)[0];
    const auto o = synth::oracle_metrics(s.explanation, s.domain, k, rule);
    CHECK(a.overlap == o.overlap);
    CHECK(a.explained == o.explained);
    CHECK(a.expected == o.expected);
    CHECK(std::fabs(fap_instance(a) - o.fap) <= 1e-12);
    CHECK(std::fabs(far_instance(a) - o.far) <= 1e-12);
    CHECK(std::fabs(faf1_instance(a) - o.faf1) <= 1e-12);
  }
}

TEST_CASE("evaluation does not depend on the worker count") {
  const RandomWorld w = random_world(5, 3000);
  EvaluationConfig config;
  config.scoping = ScopingRule::kCorrectOnly;
  const auto scope = build_scope(w.corpus, w.catalog, config);
  setenv("FEATALIGN_WORKERS", "1", 1);
  const Evaluation serial = evaluate(w.corpus, w.catalog, scope, config);
  setenv("FEATALIGN_WORKERS", "8", 1);
  const Evaluation parallel = evaluate(w.corpus, w.catalog, scope, config);
  unsetenv("FEATALIGN_WORKERS");
  CHECK(serial.points == parallel.points);
}

TEST_CASE("evaluation does not depend on corpus order") {
  RandomWorld w = random_world(6, 800);
  const EvaluationConfig config;
  const auto a = evaluate(w.corpus, w.catalog, build_scope(w.corpus, w.catalog, config), config);
  std::reverse(w.corpus.begin(), w.corpus.end());
  const auto b = evaluate(w.corpus, w.catalog, build_scope(w.corpus, w.catalog, config), config);
  CHECK(a.points == b.points);
}

TEST_CASE("dataset mean is the mean of class values") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RandomWorld w = random_world(seed, 400);
    EvaluationConfig config;
    config.levels = kLevelClass | kLevelDataset;
    const auto scope = build_scope(w.corpus, w.catalog, config);
    const Evaluation eval = evaluate(w.corpus, w.catalog, scope, config);
    for (const auto& d : eval.points) {
      if (d.level != Level::kDataset) continue;
      double sum = 0.0;
      int n = 0;
      for (const auto& c : eval.points) {
        if (c.level == Level::kClass && c.metric == d.metric && c.k == d.k &&
            (c.flags & kFlagEmptyDomainSet) == 0) {
          sum += c.value;
          ++n;
        }
      }
      REQUIRE(n > 0);
      CHECK(std::fabs(d.value - sum / n) <= 1e-15);
    }
  }
}

TEST_CASE("class FAR series never decrease") {
  const RandomWorld w = random_world(21, 600);
  const EvaluationConfig config;
  const auto scope = build_scope(w.corpus, w.catalog, config);
  const SweepResult r = run_sweep(w.corpus, w.catalog, scope, config, KRange{1, 40});
  for (const auto& s : r.series) {
    if (s.metric != Metric::kFar) continue;
    for (std::size_t i = 1; i < s.points.size(); ++i) {
      CHECK(s.points[i].value >= s.points[i - 1].value);
    }
  }
}

TEST_CASE("serialization round trip over random corpora") {
  const RandomWorld w = random_world(8, 300);
  std::string text;
  for (const auto& e : w.corpus) text += serialize_explanation(e) + "\n";
  const auto loaded = load_explanations(text);
  REQUIRE(loaded.report.ok());
  REQUIRE(loaded.corpus.size() == w.corpus.size());
  for (std::size_t i = 0; i < w.corpus.size(); ++i) CHECK(loaded.corpus[i] == w.corpus[i]);
}

TEST_CASE("cross validation warnings do not depend on input order") {
  RandomWorld w = random_world(9, 200);
  const auto a = cross_validate(w.corpus, w.catalog);
  std::reverse(w.corpus.begin(), w.corpus.end());
  const auto b = cross_validate(w.corpus, w.catalog);
  CHECK(a.warnings == b.warnings);
  CHECK(std::is_sorted(a.warnings.begin(), a.warnings.end(),
                       [](const Issue& x, const Issue& y) { return x.subject < y.subject; }));
}

}  // TEST_SUITE
