#pragma once

#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "polar/core/dataset.hpp"
#include "polar/score/format.hpp"
#include "polar/score/metrics.hpp"
#include "polar/score/predictions.hpp"

namespace polar::score {

struct LabelScore {
  std::string label;
  double f1 = 0.0;
  std::optional<double> auc;  // nullopt when only one class is present
  std::int64_t support = 0;   // gold records carrying this class
};

struct LanguageScore {
  double macro_f1 = 0.0;
  std::vector<LabelScore> labels;
  std::int64_t records = 0;

  std::vector<double> per_label_f1() const {
    std::vector<double> out;
    for (const auto& l : labels) out.push_back(l.f1);
    return out;
  }
};

struct ScoreReport {
  Subtask subtask = Subtask::S1;
  std::map<Language, LanguageScore> per_language;
  std::vector<std::string> warnings;
};

// Row names of a report. Subtask 1 is scored over both classes, so it has a
// row for each; the other subtasks have one row per schema label.
inline std::vector<std::string> report_label_names(Subtask subtask) {
  if (subtask == Subtask::S1) return {"polarization", "no polarization"};
  return schema_for(subtask).label_names;
}

namespace detail {

struct LabelColumn {
  std::vector<double> scores;
  std::vector<int> gold;
  Confusion confusion;
};

inline void accumulate(LabelColumn& col, double score, bool decision, bool gold) {
  col.scores.push_back(score);
  col.gold.push_back(gold ? 1 : 0);
  if (decision && gold) ++col.confusion.tp;
  if (decision && !gold) ++col.confusion.fp;
  if (!decision && gold) ++col.confusion.fn;
  if (!decision && !gold) ++col.confusion.tn;
}

inline std::optional<double> auc_or_nullopt(const LabelColumn& col) {
  try {
    return roc_auc(col.scores, col.gold);
  } catch (const UndefinedAuc&) {
    return std::nullopt;
  }
}

}  // namespace detail

// Scores aligned (prediction, gold) rows that all belong to one language.
inline LanguageScore score_rows(Subtask subtask, std::span<const Prediction> preds,
                                std::span<const SubtaskLabels> gold) {
  if (preds.size() != gold.size()) throw ValidationError("predictions and gold differ in length");
  if (preds.empty()) throw ValidationError("nothing to score");
  const auto names = report_label_names(subtask);
  const std::size_t width = schema_for(subtask).width();
  std::vector<detail::LabelColumn> cols(names.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto& p = preds[i];
    if (p.scores.size() != width || gold[i].width() != width) {
      throw SchemaError("score row width does not match " + to_string(subtask));
    }
    for (std::size_t j = 0; j < width; ++j) {
      detail::accumulate(cols[j], p.scores[j], p.decisions[j], gold[i].test(j));
    }
    if (subtask == Subtask::S1) {
      detail::accumulate(cols[1], 1.0 - p.scores[0], !p.decisions[0], !gold[i].test(0));
    }
  }
  LanguageScore out;
  out.records = static_cast<std::int64_t>(preds.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    LabelScore ls;
    ls.label = names[j];
    ls.f1 = f1(cols[j].confusion);
    ls.auc = detail::auc_or_nullopt(cols[j]);
    ls.support = cols[j].confusion.tp + cols[j].confusion.fn;
    sum += ls.f1;
    out.labels.push_back(std::move(ls));
  }
  out.macro_f1 = sum / static_cast<double>(cols.size());
  return out;
}

inline LanguageScore score_language(const PredictionSet& preds, const Dataset& gold, Language lang) {
  if (preds.subtask() != gold.subtask()) {
    throw SchemaError("predictions are for " + to_string(preds.subtask()) + ", gold is " +
                      to_string(gold.subtask()));
  }
  std::vector<Prediction> rows;
  std::vector<SubtaskLabels> labels;
  for (const auto& r : gold.records()) {
    if (r.lang != lang) continue;
    if (!r.labels) throw ValidationError("gold record '" + r.id + "' is unlabeled");
    rows.push_back(preds.at(r.id));
    labels.push_back(*r.labels);
  }
  if (rows.empty()) {
    throw ValidationError("no gold records for language " + std::string(to_string(lang)));
  }
  return score_rows(gold.subtask(), rows, labels);
}

inline double macro_f1(const PredictionSet& preds, const Dataset& gold, Language lang) {
  return score_language(preds, gold, lang).macro_f1;
}

inline ScoreReport per_language_report(const PredictionSet& preds, const Dataset& gold) {
  ScoreReport report;
  report.subtask = gold.subtask();
  std::vector<bool> present(kLanguageCount, false);
  for (const auto& r : gold.records()) present[index_of(r.lang)] = true;
  for (auto lang : all_languages()) {
    if (!present[index_of(lang)]) continue;
    auto ls = score_language(preds, gold, lang);
    for (const auto& l : ls.labels) {
      if (!l.auc) {
        report.warnings.push_back("AUC undefined for " + std::string(to_string(lang)) + "/" +
                                  l.label + " (single class)");
      }
    }
    report.per_language.emplace(lang, std::move(ls));
  }
  return report;
}

// AUC of one schema label over all languages pooled together.
inline std::optional<double> pooled_auc(const PredictionSet& preds, const Dataset& gold,
                                        std::size_t label) {
  detail::LabelColumn col;
  for (const auto& r : gold.records()) {
    if (!r.labels) throw ValidationError("gold record '" + r.id + "' is unlabeled");
    const auto& p = preds.at(r.id);
    detail::accumulate(col, p.scores[label], p.decisions[label], r.labels->test(label));
  }
  return detail::auc_or_nullopt(col);
}

// Mean of the per-language AUCs of one report row, skipping undefined ones.
inline std::optional<double> macro_auc(const ScoreReport& report, std::size_t row) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& [lang, ls] : report.per_language) {
    if (row < ls.labels.size() && ls.labels[row].auc) {
      sum += *ls.labels[row].auc;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

inline void write_report_csv(const ScoreReport& report, std::ostream& out) {
  out << "language,label,f1,auc,support\n";
  for (const auto& [lang, ls] : report.per_language) {
    for (const auto& l : ls.labels) {
      out << to_string(lang) << ',' << l.label << ',' << fixed4(l.f1) << ',' << fixed4(l.auc, "NA")
          << ',' << l.support << '\n';
    }
  }
}

inline void write_summary_csv(const ScoreReport& report, std::ostream& out) {
  out << "language,macro_f1\n";
  for (const auto& [lang, ls] : report.per_language) {
    out << to_string(lang) << ',' << fixed4(ls.macro_f1) << '\n';
  }
}

// Plain table: one row per language, macro-F1 followed by the per-label F1.
inline void render_table(const ScoreReport& report, std::ostream& out) {
  const auto names = report_label_names(report.subtask);
  out << std::left << std::setw(10) << "Language" << std::right << std::setw(10) << "Macro F1";
  for (const auto& n : names) out << std::setw(18) << n;
  out << '\n';
  for (const auto& [lang, ls] : report.per_language) {
    out << std::left << std::setw(10) << to_string(lang) << std::right << std::setw(10)
        << fixed4(ls.macro_f1);
    for (const auto& l : ls.labels) out << std::setw(18) << fixed4(l.f1);
    out << '\n';
  }
}

}  // namespace polar::score
