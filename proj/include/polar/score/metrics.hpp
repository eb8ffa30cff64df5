#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "polar/core/error.hpp"

namespace polar::score {

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;
};

// 2tp / (2tp + fp + fn), and 0 when nothing was predicted or expected.
inline double f1(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  if (tp < 0 || fp < 0 || fn < 0) throw ValidationError("confusion counts must be non-negative");
  const auto denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(denom);
}

inline double f1(const Confusion& c) { return f1(c.tp, c.fp, c.fn); }

class UndefinedAuc : public ValidationError {
 public:
  UndefinedAuc() : ValidationError("AUC is undefined when only one class is present") {}
};

// Mann-Whitney formulation: average ranks over tied scores, then
// AUC = (R_pos - P(P+1)/2) / (P N).
inline double roc_auc(std::span<const double> scores, std::span<const int> gold) {
  if (scores.size() != gold.size()) throw ValidationError("scores and gold differ in length");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Ranks are doubled so that tie averages stay integral.
  double rank_sum_x2 = 0.0;
  std::int64_t positives = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const auto tied_rank_x2 = static_cast<double>(i + 1 + j);  // 2 * mean of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) {
      if (gold[order[k]] != 0) {
        rank_sum_x2 += tied_rank_x2;
        ++positives;
      }
    }
    i = j;
  }
  const auto negatives = static_cast<std::int64_t>(n) - positives;
  if (positives == 0 || negatives == 0) throw UndefinedAuc();
  const double p = static_cast<double>(positives);
  const double u = rank_sum_x2 / 2.0 - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

// Percentage of systems that scored strictly worse; ties are not worse.
inline double rank_percentile(double my_score, std::span<const double> all_scores) {
  if (std::find(all_scores.begin(), all_scores.end(), my_score) == all_scores.end()) {
    throw ValidationError("own score is not on the leaderboard");
  }
  const auto worse = std::count_if(all_scores.begin(), all_scores.end(),
                                   [&](double s) { return s < my_score; });
  return 100.0 * static_cast<double>(worse) / static_cast<double>(all_scores.size());
}

}  // namespace polar::score
