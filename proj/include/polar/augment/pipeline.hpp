#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "polar/augment/anonymize.hpp"
#include "polar/augment/casing.hpp"
#include "polar/augment/dedup.hpp"
#include "polar/augment/homoglyph.hpp"
#include "polar/core/dataset.hpp"
#include "polar/core/random.hpp"

namespace polar::augment {

inline std::size_t technique_index(Provenance technique) {
  for (std::size_t i = 0; i < kAugmentationTechniques.size(); ++i) {
    if (kAugmentationTechniques[i] == technique) return i;
  }
  throw ValidationError("'original' is not an augmentation technique");
}

struct AugmentationPlan {
  double total_fraction = 0.20;
  // Indexed like kAugmentationTechniques.
  std::array<double, 4> per_technique_fraction = {0.05, 0.05, 0.05, 0.05};
  std::uint64_t seed = rng::kDefaultSeed;
  double homoglyph_char_rate = kDefaultHomoglyphRate;

  static AugmentationPlan uniform(double total_fraction, std::uint64_t seed = rng::kDefaultSeed) {
    AugmentationPlan plan;
    plan.total_fraction = total_fraction;
    plan.per_technique_fraction.fill(total_fraction / 4.0);
    plan.seed = seed;
    return plan;
  }

  double fraction(Provenance technique) const {
    return per_technique_fraction[technique_index(technique)];
  }

  void validate() const {
    double sum = 0.0;
    for (double f : per_technique_fraction) {
      if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("technique fraction must be in [0, 1]");
      sum += f;
    }
    if (std::abs(sum - total_fraction) > 1e-9) {
      throw ValidationError("per-technique fractions sum to " + std::to_string(sum) +
                            ", not the total fraction " + std::to_string(total_fraction));
    }
    if (!(homoglyph_char_rate > 0.0 && homoglyph_char_rate <= 1.0)) {
      throw ValidationError("homoglyph rate must be in (0, 1]");
    }
  }
};

// ceil(fraction * n), but at least one record for a nonempty dataset and a
// nonzero fraction. The epsilon absorbs binary representation error
// (0.07 * 100 is 7.000000000000001).
inline std::size_t candidate_count(double fraction, std::size_t n) {
  if (n == 0 || fraction <= 0.0) return 0;
  const double scaled = fraction * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(scaled - 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

inline std::string apply_technique(Provenance technique, const std::string& text,
                                   const ConfusablesTable& table, double homoglyph_rate,
                                   std::uint64_t key) {
  switch (technique) {
    case Provenance::anonymized: return anonymize(text);
    case Provenance::lowercased: return to_lowercase(text);
    case Provenance::uppercased: return to_uppercase(text);
    case Provenance::homoglyphed: return homoglyphy_detailed(text, table, homoglyph_rate, key).text;
    case Provenance::original: break;
  }
  throw ValidationError("'original' is not an augmentation technique");
}

struct TechniqueStats {
  Provenance technique = Provenance::anonymized;
  std::size_t candidates = 0;  // sampled source records, before dedup
  std::size_t kept = 0;        // surviving dedup
};

struct AugmentationResult {
  Dataset dataset;
  std::array<TechniqueStats, 4> stats;
};

// Duplicate-transform-deduplicate. Each technique draws its own sample of
// source records without replacement, so one record may feed several
// techniques.
inline AugmentationResult apply_augmentation(const Dataset& ds, const AugmentationPlan& plan,
                                             const ConfusablesTable& table) {
  plan.validate();
  for (const auto& r : ds.records()) {
    if (r.split == Split::test) {
      throw ValidationError("augmentation input contains test record '" + r.id + "'");
    }
  }
  const std::size_t n = ds.size();
  std::vector<TextRecord> records(ds.records().begin(), ds.records().end());
  AugmentationResult result{Dataset(ds.subtask()), {}};

  // Input records that survive the final dedup. New copies cannot displace
  // them: originals outrank derived records and earlier derived records win.
  // A copy of a record that is itself dropped would cite a missing parent,
  // so such copies are discarded.
  std::set<std::string> surviving;
  for (const auto& r : dedup_records(ds.records())) surviving.insert(r.id);

  for (std::size_t t = 0; t < kAugmentationTechniques.size(); ++t) {
    const auto technique = kAugmentationTechniques[t];
    const std::string technique_name(to_string(technique));
    const std::size_t k = candidate_count(plan.per_technique_fraction[t], n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng::Stream sampler(plan.seed, {"augment", "sample", technique_name});
    sampler.shuffle(std::span<std::size_t>(order));
    order.resize(k);
    std::sort(order.begin(), order.end());

    for (std::size_t idx : order) {
      const auto& parent = ds[idx];
      if (!surviving.count(parent.id)) continue;
      TextRecord child = parent;
      child.id = derived_id(parent.id, technique);
      child.parent_id = parent.id;
      child.provenance = technique;
      const auto key = rng::derive_key(plan.seed, {"augment", "transform", technique_name, parent.id});
      child.text = apply_technique(technique, parent.text, table, plan.homoglyph_char_rate, key);
      records.push_back(std::move(child));
    }
    result.stats[t] = {technique, k, 0};
  }

  auto kept = dedup_records(records);
  for (const auto& r : kept) {
    if (r.provenance != Provenance::original) ++result.stats[technique_index(r.provenance)].kept;
  }
  result.dataset = Dataset(ds.subtask(), std::move(kept));
  return result;
}

}  // namespace polar::augment
