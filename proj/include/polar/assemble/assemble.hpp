#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polar/augment/dedup.hpp"
#include "polar/core/dataset.hpp"
#include "polar/core/jsonl.hpp"
#include "polar/core/random.hpp"

namespace polar::assemble {

enum class SamplingMode { per_language_per_label, per_language_distributional };

struct ValidationPlan {
  SamplingMode mode = SamplingMode::per_language_per_label;
  std::size_t per_cell_count = 100;
  std::uint64_t seed = rng::kDefaultSeed;
  // Languages to sample. Empty means every language present in the input;
  // a listed language without records is an error.
  std::vector<Language> languages;

  static ValidationPlan for_subtask(Subtask subtask, std::uint64_t seed = rng::kDefaultSeed) {
    ValidationPlan plan;
    plan.mode = subtask == Subtask::S1 ? SamplingMode::per_language_per_label
                                       : SamplingMode::per_language_distributional;
    plan.seed = seed;
    return plan;
  }
};

struct Shortfall {
  Language lang;
  int label;  // S1 class value, 0 or 1
  std::size_t available;

  friend bool operator==(const Shortfall&, const Shortfall&) = default;
};

struct ValidationSplit {
  Dataset validation;
  Dataset train_rest;
  std::vector<Shortfall> shortfalls;
};

// Train records first, then dev records, then dedup.
inline Dataset merge_and_dedup(const Dataset& train, const Dataset& dev) {
  if (train.subtask() != dev.subtask()) {
    throw SchemaError("cannot merge a " + to_string(train.subtask()) + " train set with a " +
                      to_string(dev.subtask()) + " dev set");
  }
  std::vector<TextRecord> all(train.records().begin(), train.records().end());
  all.insert(all.end(), dev.records().begin(), dev.records().end());
  return Dataset(train.subtask(), augment::dedup_records(all));
}

namespace detail {

inline std::vector<Language> languages_to_sample(const Dataset& ds, const ValidationPlan& plan) {
  std::vector<bool> present(kLanguageCount, false);
  for (const auto& r : ds.records()) {
    if (r.labels) present[index_of(r.lang)] = true;
  }
  if (plan.languages.empty()) {
    std::vector<Language> out;
    for (auto lang : all_languages()) {
      if (present[index_of(lang)]) out.push_back(lang);
    }
    return out;
  }
  for (auto lang : plan.languages) {
    if (!present[index_of(lang)]) {
      throw ValidationError("language " + std::string(to_string(lang)) +
                            " has no labeled records to sample from");
    }
  }
  return plan.languages;
}

inline ValidationSplit partition(const Dataset& ds, const std::vector<bool>& selected,
                                 std::vector<Shortfall> shortfalls) {
  std::vector<TextRecord> validation;
  std::vector<TextRecord> rest;
  for (std::size_t i = 0; i < ds.size(); ++i) (selected[i] ? validation : rest).push_back(ds[i]);
  return {Dataset(ds.subtask(), std::move(validation)), Dataset(ds.subtask(), std::move(rest)),
          std::move(shortfalls)};
}

// Draws k of `pool` (record indices in ingestion order) without replacement.
inline std::vector<std::size_t> draw(std::vector<std::size_t> pool, std::size_t k,
                                     rng::Stream& stream) {
  stream.shuffle(std::span<std::size_t>(pool));
  pool.resize(std::min(k, pool.size()));
  return pool;
}

}  // namespace detail

// Subtask 1: per_cell_count records per (language, class) cell. A cell with
// no records is an error; a partially filled cell is reported as a shortfall.
inline ValidationSplit sample_validation_binary(const Dataset& ds, const ValidationPlan& plan) {
  if (ds.subtask() != Subtask::S1) throw SchemaError("binary sampling requires an S1 dataset");
  if (plan.mode != SamplingMode::per_language_per_label) {
    throw ValidationError("binary sampling requires the per-language-per-label mode");
  }
  std::vector<bool> selected(ds.size(), false);
  std::vector<Shortfall> shortfalls;
  for (auto lang : detail::languages_to_sample(ds, plan)) {
    for (int label : {0, 1}) {
      std::vector<std::size_t> cell;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto& r = ds[i];
        if (r.lang == lang && r.labels && static_cast<int>(r.labels->test(0)) == label) {
          cell.push_back(i);
        }
      }
      if (cell.empty()) {
        throw ValidationError("validation cell (" + std::string(to_string(lang)) + ", " +
                              std::to_string(label) + ") has no records");
      }
      if (cell.size() < plan.per_cell_count) shortfalls.push_back({lang, label, cell.size()});
      rng::Stream stream(plan.seed, {"assemble", "binary", to_string(lang), label ? "1" : "0"});
      for (std::size_t i : detail::draw(std::move(cell), plan.per_cell_count, stream)) {
        selected[i] = true;
      }
    }
  }
  return detail::partition(ds, selected, std::move(shortfalls));
}

namespace detail {

// Sum over labels of |target - count|.
inline long total_deficit(const std::vector<long>& target, const std::vector<long>& count) {
  long sum = 0;
  for (std::size_t j = 0; j < target.size(); ++j) sum += std::labs(target[j] - count[j]);
  return sum;
}

// Labels whose count is off by more than one.
inline long excess_deviation(const std::vector<long>& target, const std::vector<long>& count) {
  long sum = 0;
  for (std::size_t j = 0; j < target.size(); ++j) {
    sum += std::max(0L, std::labs(target[j] - count[j]) - 1);
  }
  return sum;
}

// Picks `n` of `pool` so the per-label counts track `target`: greedy by
// largest deficit reduction (ties by the shuffled pool order), followed by a
// swap pass that repairs any label still more than one away from its target.
inline std::vector<std::size_t> match_marginals(const Dataset& ds, std::vector<std::size_t> pool,
                                                std::size_t n, const std::vector<long>& target,
                                                rng::Stream& stream) {
  const std::size_t width = target.size();
  stream.shuffle(std::span<std::size_t>(pool));
  auto bit = [&](std::size_t rec, std::size_t j) -> long {
    return ds[rec].labels->test(j) ? 1 : 0;
  };

  std::vector<long> count(width, 0);
  std::vector<bool> taken(pool.size(), false);
  std::vector<std::size_t> chosen;
  chosen.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    long best_gain = 0;
    std::size_t best = pool.size();
    for (std::size_t p = 0; p < pool.size(); ++p) {
      if (taken[p]) continue;
      long gain = 0;
      for (std::size_t j = 0; j < width; ++j) {
        if (bit(pool[p], j)) gain += std::labs(target[j] - count[j]) - std::labs(target[j] - count[j] - 1);
      }
      if (best == pool.size() || gain > best_gain) {
        best = p;
        best_gain = gain;
      }
    }
    taken[best] = true;
    chosen.push_back(best);
    for (std::size_t j = 0; j < width; ++j) count[j] += bit(pool[best], j);
  }

  // First-improvement swaps on (excess deviation, total deficit).
  constexpr int kMaxPasses = 50;
  for (int pass = 0; pass < kMaxPasses && excess_deviation(target, count) > 0; ++pass) {
    bool improved = false;
    for (std::size_t c = 0; c < chosen.size() && !improved; ++c) {
      for (std::size_t p = 0; p < pool.size() && !improved; ++p) {
        if (taken[p]) continue;
        auto trial = count;
        for (std::size_t j = 0; j < width; ++j) trial[j] += bit(pool[p], j) - bit(pool[chosen[c]], j);
        const auto before = std::make_pair(excess_deviation(target, count), total_deficit(target, count));
        const auto after = std::make_pair(excess_deviation(target, trial), total_deficit(target, trial));
        if (after < before) {
          taken[chosen[c]] = false;
          taken[p] = true;
          chosen[c] = p;
          count = trial;
          improved = true;
        }
      }
    }
    if (!improved) break;
  }

  std::vector<std::size_t> out;
  out.reserve(chosen.size());
  for (std::size_t p : chosen) out.push_back(pool[p]);
  return out;
}

}  // namespace detail

// Subtasks 2 and 3: per_cell_count records per language whose label
// marginals follow the language's label distribution.
inline ValidationSplit sample_validation_multilabel(const Dataset& ds, const ValidationPlan& plan) {
  if (ds.subtask() == Subtask::S1) throw SchemaError("multilabel sampling requires an S2 or S3 dataset");
  if (plan.mode != SamplingMode::per_language_distributional) {
    throw ValidationError("multilabel sampling requires the per-language-distributional mode");
  }
  const std::size_t width = ds.schema().width();
  std::vector<bool> selected(ds.size(), false);
  for (auto lang : detail::languages_to_sample(ds, plan)) {
    std::vector<std::size_t> pool;
    std::vector<long> positives(width, 0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto& r = ds[i];
      if (r.lang != lang || !r.labels) continue;
      pool.push_back(i);
      for (std::size_t j = 0; j < width; ++j) positives[j] += r.labels->test(j) ? 1 : 0;
    }
    const std::size_t n = std::min(plan.per_cell_count, pool.size());
    std::vector<long> target(width);
    for (std::size_t j = 0; j < width; ++j) {
      const double freq = static_cast<double>(positives[j]) / static_cast<double>(pool.size());
      target[j] = std::lround(static_cast<double>(n) * freq);
    }
    rng::Stream stream(plan.seed, {"assemble", "multilabel", to_string(lang)});
    for (std::size_t i : detail::match_marginals(ds, std::move(pool), n, target, stream)) {
      selected[i] = true;
    }
  }
  return detail::partition(ds, selected, {});
}

inline ValidationSplit sample_validation(const Dataset& ds, const ValidationPlan& plan) {
  return plan.mode == SamplingMode::per_language_per_label ? sample_validation_binary(ds, plan)
                                                           : sample_validation_multilabel(ds, plan);
}

// One line per input record: {"id": ..., "assignment": "validation" | "train"}.
inline void write_split_manifest(const Dataset& input, const ValidationSplit& split,
                                 std::ostream& out) {
  for (const auto& r : input.records()) {
    nlohmann::ordered_json doc;
    doc["id"] = r.id;
    doc["assignment"] = split.validation.find(r.id) != nullptr ? "validation" : "train";
    out << doc.dump() << '\n';
  }
}

}  // namespace polar::assemble
