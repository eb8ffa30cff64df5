#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polar/core/dataset.hpp"
#include "polar/core/error.hpp"
#include "polar/core/record.hpp"
#include "polar/core/unicode.hpp"

namespace polar {

using ordered_json = nlohmann::ordered_json;

// Calls `fn(line_number, document)` for every non-blank line of a JSON-lines file.
inline void for_each_json_line(const std::filesystem::path& path,
                               const std::function<void(std::size_t, const nlohmann::json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(number, e.what());
    }
    if (!doc.is_object()) throw ParseError(number, "expected a JSON object");
    fn(number, doc);
  }
}

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& doc, const char* key, std::size_t line) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(line, std::string("missing key '") + key + "'");
  return *it;
}

inline std::string require_string(const nlohmann::json& doc, const char* key, std::size_t line) {
  const auto& v = require(doc, key, line);
  if (!v.is_string()) throw ParseError(line, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace detail

inline TextRecord record_from_json(const nlohmann::json& doc, Subtask subtask, std::size_t line) {
  TextRecord r;
  r.id = detail::require_string(doc, "id", line);
  r.text = unicode::nfc(detail::require_string(doc, "text", line));
  try {
    r.lang = parse_language(detail::require_string(doc, "lang", line));
    r.split = parse_split(detail::require_string(doc, "split", line));
    r.provenance = parse_provenance(detail::require_string(doc, "provenance", line));
  } catch (const ValidationError& e) {
    throw ParseError(line, e.what());
  }
  const auto& labels = detail::require(doc, "labels", line);
  if (!labels.is_null()) {
    if (!labels.is_array()) throw ParseError(line, "'labels' must be an array or null");
    std::vector<int> bits;
    for (const auto& b : labels) {
      if (!b.is_number_integer()) throw ParseError(line, "label bits must be integers");
      bits.push_back(b.get<int>());
    }
    try {
      r.labels = SubtaskLabels(subtask, bits);
    } catch (const SchemaError& e) {
      throw SchemaError("line " + std::to_string(line) + ": " + e.what());
    }
  }
  if (auto it = doc.find("parent_id"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError(line, "'parent_id' must be a string");
    r.parent_id = it->get<std::string>();
  }
  return r;
}

inline ordered_json record_to_json(const TextRecord& r) {
  ordered_json doc;
  doc["id"] = r.id;
  doc["text"] = r.text;
  doc["lang"] = to_string(r.lang);
  if (r.labels) {
    doc["labels"] = r.labels->to_vector();
  } else {
    doc["labels"] = nullptr;
  }
  doc["split"] = to_string(r.split);
  doc["provenance"] = to_string(r.provenance);
  if (r.parent_id) doc["parent_id"] = *r.parent_id;
  return doc;
}

inline Dataset read_dataset(const std::filesystem::path& path, Subtask subtask) {
  std::vector<TextRecord> records;
  for_each_json_line(path, [&](std::size_t line, const nlohmann::json& doc) {
    records.push_back(record_from_json(doc, subtask, line));
  });
  return Dataset(subtask, std::move(records));
}

inline std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void write_records(std::ostream& out, std::span<const TextRecord> records) {
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

inline void write_dataset(const Dataset& ds, const std::filesystem::path& path) {
  auto out = open_for_writing(path);
  write_records(out, ds.records());
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace polar
