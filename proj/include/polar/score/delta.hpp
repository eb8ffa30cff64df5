#pragma once

#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "polar/core/error.hpp"
#include "polar/core/language.hpp"
#include "polar/score/format.hpp"
#include "polar/score/report.hpp"

namespace polar::score {

// Languages by named columns (usually one macro-F1 column per subtask).
// An absent cell is a language that did not take part in that column.
struct SummaryTable {
  std::vector<std::string> columns;
  std::map<Language, std::vector<std::optional<double>>> rows;
};

struct DeltaTable {
  SummaryTable cells;
  // Mean over the languages present in each column.
  std::vector<std::optional<double>> average;
};

inline SummaryTable to_summary(const ScoreReport& report, const std::string& column = "macro_f1") {
  SummaryTable table;
  table.columns = {column};
  for (const auto& [lang, ls] : report.per_language) table.rows[lang] = {ls.macro_f1};
  return table;
}

inline std::vector<std::optional<double>> column_averages(const SummaryTable& table) {
  std::vector<std::optional<double>> out(table.columns.size());
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& [lang, row] : table.rows) {
      if (row[c]) {
        sum += *row[c];
        ++n;
      }
    }
    if (n > 0) out[c] = sum / static_cast<double>(n);
  }
  return out;
}

inline DeltaTable baseline_delta(const SummaryTable& mine, const SummaryTable& baseline) {
  if (mine.columns != baseline.columns) throw SchemaError("column mismatch between the two reports");
  DeltaTable delta;
  delta.cells.columns = mine.columns;
  for (const auto& [lang, row] : mine.rows) {
    if (!baseline.rows.count(lang)) {
      throw ValidationError("language set mismatch: " + std::string(to_string(lang)) +
                            " missing from the baseline");
    }
  }
  for (const auto& [lang, row] : baseline.rows) {
    auto it = mine.rows.find(lang);
    if (it == mine.rows.end()) {
      throw ValidationError("language set mismatch: " + std::string(to_string(lang)) +
                            " missing from the submitted report");
    }
    std::vector<std::optional<double>> cells(mine.columns.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto& a = it->second[c];
      const auto& b = row[c];
      if (a.has_value() != b.has_value()) {
        throw ValidationError("language set mismatch in column '" + mine.columns[c] + "' for " +
                              std::string(to_string(lang)));
      }
      if (a) cells[c] = *a - *b;
    }
    delta.cells.rows.emplace(lang, std::move(cells));
  }
  delta.average = column_averages(delta.cells);
  return delta;
}

// `language,<col>...` header; '-', empty and NA mark absent cells.
inline SummaryTable read_summary_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  SummaryTable table;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (table.columns.empty()) {
      if (fields.size() < 2 || fields[0] != "language") {
        throw ParseError(number, "expected header 'language,<column>...'");
      }
      table.columns.assign(fields.begin() + 1, fields.end());
      continue;
    }
    if (fields[0] == "Average") continue;
    if (fields.size() != table.columns.size() + 1) throw ParseError(number, "wrong number of fields");
    Language lang;
    try {
      lang = parse_language(fields[0]);
    } catch (const ValidationError& e) {
      throw ParseError(number, e.what());
    }
    std::vector<std::optional<double>> row;
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto& f = fields[c];
      if (f.empty() || f == "-" || f == "NA") {
        row.emplace_back();
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (end == f.c_str() || *end != '\0') throw ParseError(number, "not a number: '" + f + "'");
      row.emplace_back(v);
    }
    if (!table.rows.emplace(lang, std::move(row)).second) {
      throw ParseError(number, "duplicate language " + fields[0]);
    }
  }
  if (table.columns.empty()) throw ParseError(number, "missing header");
  return table;
}

inline void write_summary_table(const SummaryTable& table, std::ostream& out) {
  out << "language";
  for (const auto& c : table.columns) out << ',' << c;
  out << '\n';
  for (const auto& [lang, row] : table.rows) {
    out << to_string(lang);
    for (const auto& v : row) out << ',' << fixed4(v);
    out << '\n';
  }
}

inline void write_delta_csv(const DeltaTable& delta, std::ostream& out) {
  write_summary_table(delta.cells, out);
  out << "Average";
  for (const auto& v : delta.average) out << ',' << fixed4(v);
  out << '\n';
}

// One score per line; '#' comment lines and a trailing `name,score` form are accepted.
inline std::vector<double> read_leaderboard(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<double> scores;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_csv_line(line);
    const auto& f = fields.back();
    char* end = nullptr;
    const double v = std::strtod(f.c_str(), &end);
    if (f.empty() || *end != '\0') throw ParseError(number, "not a score: '" + f + "'");
    scores.push_back(v);
  }
  if (scores.empty()) throw ValidationError("leaderboard is empty");
  return scores;
}

}  // namespace polar::score
