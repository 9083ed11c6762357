#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace featalign::synth {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<FeatureName> names_for(const std::vector<std::size_t>& indices,
                                   std::size_t universe) {
  std::vector<FeatureName> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(canonicalize(feature_label(i, universe)));
  return out;
}

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

std::uint64_t Rng::next() { return splitmix64(state_); }

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed ^ (index * 0xD1B54A32D192ED03ull);
  splitmix64(x);
  return splitmix64(x);
}

std::string feature_label(std::size_t index, std::size_t universe) {
  const std::size_t width = std::to_string(universe == 0 ? 0 : universe - 1).size();
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "f" + digits;
}

AlignedSample gen_aligned(std::size_t n_features, std::size_t f_set_size,
                          double alignment, std::uint64_t seed) {
  if (f_set_size > n_features || !(alignment >= 0.0 && alignment <= 1.0)) {
    throw Error(ErrorCode::kInvalidSynthSpec,
                "need f_set_size <= n_features and alignment in [0, 1]");
  }
  Rng rng(seed);
  std::vector<std::size_t> universe = iota_vec(n_features);
  rng.shuffle(universe);
  std::vector<std::size_t> domain(universe.begin(), universe.begin() + f_set_size);
  std::vector<std::size_t> others(universe.begin() + f_set_size, universe.end());
  std::sort(domain.begin(), domain.end());

  // Tolerance keeps products such as 0.3 * 10 from rounding up to 4.
  const auto lead = static_cast<std::size_t>(
      std::ceil(alignment * static_cast<double>(f_set_size) - 1e-9));
  std::vector<std::size_t> shuffled_domain = domain;
  rng.shuffle(shuffled_domain);
  rng.shuffle(others);

  std::vector<std::size_t> order(shuffled_domain.begin(), shuffled_domain.begin() + lead);
  order.insert(order.end(), others.begin(), others.end());
  order.insert(order.end(), shuffled_domain.begin() + lead, shuffled_domain.end());

  std::vector<Attribution> entries;
  entries.reserve(n_features);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    entries.push_back({canonicalize(feature_label(order[pos], n_features)),
                       static_cast<double>(n_features - pos) /
                           static_cast<double>(n_features)});
  }
  return {RankedAttribution("aligned-" + std::to_string(seed), "synthetic", "synthetic",
                            std::move(entries)),
          DomainFeatureSet("synthetic", {}, {}, names_for(domain, n_features))};
}

RandomCorpus gen_random(std::size_t n_features, std::size_t f_set_size,
                        std::size_t n_instances, std::uint64_t seed,
                        const std::string& class_name) {
  if (f_set_size > n_features) {
    throw Error(ErrorCode::kInvalidSynthSpec, "need f_set_size <= n_features");
  }
  Rng rng(seed);
  std::vector<std::size_t> universe = iota_vec(n_features);
  rng.shuffle(universe);
  std::vector<std::size_t> domain(universe.begin(), universe.begin() + f_set_size);
  std::sort(domain.begin(), domain.end());

  std::vector<FeatureName> names;
  names.reserve(n_features);
  for (std::size_t i = 0; i < n_features; ++i) {
    names.push_back(canonicalize(feature_label(i, n_features)));
  }
  const std::size_t id_width = std::to_string(n_instances).size();

  std::vector<std::optional<RankedAttribution>> slots(n_instances);
  parallel_for(n_instances, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng local(derive_seed(seed, i));
      std::vector<std::size_t> perm = iota_vec(n_features);
      local.shuffle(perm);
      std::vector<Attribution> entries;
      entries.reserve(n_features);
      for (std::size_t pos = 0; pos < n_features; ++pos) {
        entries.push_back({names[perm[pos]], static_cast<double>(n_features - pos) /
                                                 static_cast<double>(n_features)});
      }
      std::string id = std::to_string(i);
      id.insert(0, id_width - id.size(), '0');
      slots[i].emplace("syn-" + id, class_name, class_name, std::move(entries));
    }
  });

  RandomCorpus out{{}, DomainFeatureSet(class_name, {}, {}, names_for(domain, n_features))};
  out.corpus.reserve(n_instances);
  for (auto& s : slots) out.corpus.push_back(std::move(*s));
  return out;
}

GeneralSample gen_general(std::size_t n_features, std::size_t f_set_size,
                          std::size_t universe_size, std::uint64_t seed) {
  if (n_features > universe_size || f_set_size > universe_size) {
    throw Error(ErrorCode::kInvalidSynthSpec,
                "universe must hold both the instance and the domain set");
  }
  Rng rng(seed);
  std::vector<std::size_t> pool = iota_vec(universe_size);
  rng.shuffle(pool);
  std::vector<std::size_t> features(pool.begin(), pool.begin() + n_features);
  rng.shuffle(pool);
  std::vector<std::size_t> domain(pool.begin(), pool.begin() + f_set_size);

  std::vector<Attribution> entries;
  entries.reserve(n_features);
  for (std::size_t idx : features) {
    // Half-steps in [-3, 3] give frequent ties in both |score| and score.
    const double score = (static_cast<double>(rng.below(13)) - 6.0) / 2.0;
    entries.push_back({canonicalize(feature_label(idx, universe_size)), score});
  }
  return {RankedAttribution("general-" + std::to_string(seed), "synthetic", "synthetic",
                            std::move(entries)),
          DomainFeatureSet("synthetic", {}, {}, names_for(domain, universe_size))};
}

DomainFeatureCatalog single_class_catalog(const DomainFeatureSet& domain) {
  return DomainFeatureCatalog(DomainFeatureCatalog::kSupportedVersion, {domain});
}

OracleResult oracle_metrics(const RankedAttribution& e, const DomainFeatureSet& f,
                            int k, RankingRule rule) {
  struct Item {
    std::string name;
    double score;
  };
  std::vector<Item> items;
  for (const auto& a : e.entries()) items.push_back({a.feature.canonical(), a.score});

  if (!e.pre_ranked()) {
    if (rule == RankingRule::kPositiveOnly) {
      std::vector<Item> kept;
      for (const auto& it : items) {
        if (it.score > 0) kept.push_back(it);
      }
      items = kept;
    }
    // Selection sort: pick the best remaining item each round.
    auto better = [&](const Item& a, const Item& b) {
      const double sa = rule == RankingRule::kAbsolute ? (a.score < 0 ? -a.score : a.score)
                                                       : a.score;
      const double sb = rule == RankingRule::kAbsolute ? (b.score < 0 ? -b.score : b.score)
                                                       : b.score;
      if (sa > sb) return true;
      if (sa < sb) return false;
      return a.name < b.name;
    };
    for (std::size_t i = 0; i < items.size(); ++i) {
      std::size_t best = i;
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        if (better(items[j], items[best])) best = j;
      }
      std::swap(items[i], items[best]);
    }
  }

  std::vector<std::string> top;
  for (std::size_t i = 0; i < items.size() && static_cast<int>(i) < k; ++i) {
    top.push_back(items[i].name);
  }
  std::vector<std::string> domain;
  for (const auto& name : f.features()) domain.push_back(name.canonical());

  OracleResult r;
  for (const auto& a : top) {
    for (const auto& b : domain) {
      if (a == b) ++r.overlap;
    }
  }
  r.explained = top.size();
  r.expected = domain.size();
  r.fap = r.explained == 0 ? 0.0 : double(r.overlap) / double(r.explained);
  r.far = r.expected == 0 ? 0.0 : double(r.overlap) / double(r.expected);
  r.faf1 = (r.explained + r.expected) == 0
               ? 0.0
               : 2.0 * double(r.overlap) / double(r.explained + r.expected);
  return r;
}

}  // namespace featalign::synth
