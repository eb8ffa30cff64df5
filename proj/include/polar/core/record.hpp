#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "polar/core/error.hpp"
#include "polar/core/language.hpp"
#include "polar/core/schema.hpp"

namespace polar {

enum class Split : std::uint8_t { train, dev, test };

enum class Provenance : std::uint8_t { original, anonymized, lowercased, uppercased, homoglyphed };

inline constexpr std::string_view to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "";
}

inline Split parse_split(std::string_view text) {
  if (text == "train") return Split::train;
  if (text == "dev") return Split::dev;
  if (text == "test") return Split::test;
  throw ValidationError("unknown split '" + std::string(text) + "'");
}

inline constexpr std::array<Provenance, 4> kAugmentationTechniques = {
    Provenance::anonymized, Provenance::lowercased, Provenance::uppercased,
    Provenance::homoglyphed};

inline constexpr std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::original: return "original";
    case Provenance::anonymized: return "anonymized";
    case Provenance::lowercased: return "lowercased";
    case Provenance::uppercased: return "uppercased";
    case Provenance::homoglyphed: return "homoglyphed";
  }
  return "";
}

inline Provenance parse_provenance(std::string_view text) {
  for (auto p : {Provenance::original, Provenance::anonymized, Provenance::lowercased,
                 Provenance::uppercased, Provenance::homoglyphed}) {
    if (to_string(p) == text) return p;
  }
  throw ValidationError("unknown provenance '" + std::string(text) + "'");
}

struct TextRecord {
  std::string id;
  std::string text;
  Language lang = Language::eng;
  // nullopt marks an unlabeled (test) record; never encoded as all-zero bits.
  std::optional<SubtaskLabels> labels;
  Split split = Split::train;
  Provenance provenance = Provenance::original;
  std::optional<std::string> parent_id;

  friend bool operator==(const TextRecord&, const TextRecord&) = default;
};

// Derived ids are `<parent_id>#<provenance>`.
inline std::string derived_id(std::string_view parent_id, Provenance provenance) {
  std::string out(parent_id);
  out += '#';
  out += to_string(provenance);
  return out;
}

inline bool is_blank(std::string_view text) {
  for (unsigned char c : text) {
    if (!(c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f')) return false;
  }
  return true;
}

// Checks the per-record invariants against the subtask the record belongs to.
inline void validate_record(const TextRecord& record, Subtask subtask) {
  if (record.id.empty()) throw ValidationError("record with empty id");
  if (is_blank(record.text)) throw ValidationError("record '" + record.id + "' has empty text");
  if (record.labels && record.labels->subtask() != subtask) {
    throw SchemaError("record '" + record.id + "' carries " + to_string(record.labels->subtask()) +
                      " labels in a " + to_string(subtask) + " dataset");
  }
  if (!language_allowed(subtask, record.lang)) {
    throw ValidationError("record '" + record.id + "': language " +
                          std::string(to_string(record.lang)) + " is not part of subtask 3");
  }
  if (record.provenance != Provenance::original && !record.parent_id) {
    throw ValidationError("derived record '" + record.id + "' has no parent id");
  }
}

}  // namespace polar
