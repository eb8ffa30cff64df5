#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "polar/appraisal/logistic.hpp"
#include "polar/score/report.hpp"

namespace polar::appraisal {

inline constexpr std::size_t kMinExamplesPerLanguage = 10;

inline std::map<Language, LabeledExamples> group_by_language(const LabeledExamples& data) {
  std::map<Language, LabeledExamples> out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto& group = out[data.features[i].lang];
    group.features.push_back(data.features[i]);
    group.labels.push_back(data.labels[i]);
  }
  return out;
}

// One classifier per language: 80/20 split, train, predict the held-out
// part and score it. Languages with fewer than ten examples are skipped.
inline score::ScoreReport evaluate_per_language(const LabeledExamples& data, Subtask subtask,
                                                const LRConfig& cfg = {}) {
  score::ScoreReport report;
  report.subtask = subtask;
  for (const auto& [lang, group] : group_by_language(data)) {
    const std::string code(to_string(lang));
    if (group.size() < kMinExamplesPerLanguage) {
      report.warnings.push_back(code + ": " + std::to_string(group.size()) +
                                " examples, at least " + std::to_string(kMinExamplesPerLanguage) +
                                " needed; skipped");
      continue;
    }
    auto [train, test] = split_80_20(group, cfg.seed, code);
    std::vector<std::string> warnings;
    const auto model = lr_train(train.features, train.labels, subtask, cfg, &warnings);
    for (const auto& w : warnings) report.warnings.push_back(code + ": " + w);

    std::vector<score::Prediction> rows;
    for (const auto& v : test.features) {
      score::Prediction p;
      p.scores = lr_probabilities(model, v);
      for (double s : p.scores) p.decisions.push_back(s >= score::kDefaultThreshold);
      rows.push_back(std::move(p));
    }
    auto ls = score::score_rows(subtask, rows, test.labels);
    for (const auto& l : ls.labels) {
      if (!l.auc) report.warnings.push_back(code + ": AUC undefined for '" + l.label + "'");
    }
    report.per_language.emplace(lang, std::move(ls));
  }
  return report;
}

// Per-label AUC table: `language,<label>...`, NA where undefined.
inline void write_auc_table(const score::ScoreReport& report, std::ostream& out) {
  const auto names = score::report_label_names(report.subtask);
  const std::size_t columns = report.subtask == Subtask::S1 ? 1 : names.size();
  out << "language";
  for (std::size_t j = 0; j < columns; ++j) out << ',' << names[j];
  out << '\n';
  for (const auto& [lang, ls] : report.per_language) {
    out << to_string(lang);
    for (std::size_t j = 0; j < columns; ++j) out << ',' << score::fixed4(ls.labels[j].auc, "NA");
    out << '\n';
  }
}

}  // namespace polar::appraisal
