#pragma once

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "polar/core/error.hpp"
#include "polar/core/language.hpp"

namespace polar {

enum class Subtask : std::uint8_t { S1 = 1, S2 = 2, S3 = 3 };

inline constexpr std::size_t kMaxLabels = 6;

struct SubtaskSchema {
  Subtask subtask;
  // Canonical bit order for every label vector of this subtask.
  std::vector<std::string> label_names;

  std::size_t width() const noexcept { return label_names.size(); }
};

inline const SubtaskSchema& schema_for(Subtask subtask) {
  static const SubtaskSchema s1{Subtask::S1, {"polarization"}};
  static const SubtaskSchema s2{
      Subtask::S2, {"political", "racial/ethnic", "religious", "gender/sexual", "other"}};
  static const SubtaskSchema s3{Subtask::S3,
                                {"stereotype", "vilification", "dehumanization",
                                 "extreme language", "lack of empathy", "invalidation"}};
  switch (subtask) {
    case Subtask::S1: return s1;
    case Subtask::S2: return s2;
    case Subtask::S3: return s3;
  }
  throw SchemaError("invalid subtask");
}

inline std::string to_string(Subtask subtask) {
  return "S" + std::to_string(static_cast<int>(subtask));
}

// Accepts "1", "S1" or "s1".
inline Subtask parse_subtask(std::string_view text) {
  if (!text.empty() && (text.front() == 'S' || text.front() == 's')) text.remove_prefix(1);
  if (text == "1") return Subtask::S1;
  if (text == "2") return Subtask::S2;
  if (text == "3") return Subtask::S3;
  throw SchemaError("unknown subtask '" + std::string(text) + "'");
}

inline bool language_allowed(Subtask subtask, Language lang) {
  return subtask != Subtask::S3 || eligible_for_subtask3(lang);
}

// Fixed-width label bit vector; the width always equals the schema width.
class SubtaskLabels {
 public:
  explicit SubtaskLabels(Subtask subtask) : subtask_(subtask) {}

  SubtaskLabels(Subtask subtask, const std::vector<int>& bits) : subtask_(subtask) {
    const auto& schema = schema_for(subtask);
    if (bits.size() != schema.width()) {
      throw SchemaError("label vector has width " + std::to_string(bits.size()) + ", " +
                        to_string(subtask) + " expects " + std::to_string(schema.width()));
    }
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != 0 && bits[i] != 1) throw SchemaError("label bits must be 0 or 1");
      bits_.set(i, bits[i] == 1);
    }
  }

  static SubtaskLabels from_names(Subtask subtask, const std::vector<std::string>& names) {
    const auto& schema = schema_for(subtask);
    SubtaskLabels out(subtask);
    for (const auto& name : names) {
      bool found = false;
      for (std::size_t i = 0; i < schema.width(); ++i) {
        if (schema.label_names[i] == name) {
          out.bits_.set(i);
          found = true;
        }
      }
      if (!found) throw SchemaError("label '" + name + "' is not part of " + to_string(subtask));
    }
    return out;
  }

  std::vector<std::string> to_names() const {
    const auto& schema = schema_for(subtask_);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < width(); ++i) {
      if (bits_.test(i)) names.push_back(schema.label_names[i]);
    }
    return names;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out(width());
    for (std::size_t i = 0; i < width(); ++i) out[i] = bits_.test(i) ? 1 : 0;
    return out;
  }

  Subtask subtask() const noexcept { return subtask_; }
  std::size_t width() const { return schema_for(subtask_).width(); }
  bool test(std::size_t i) const { return bits_.test(i); }
  void set(std::size_t i, bool value = true) { bits_.set(i, value); }
  std::size_t count() const noexcept { return bits_.count(); }

  friend bool operator==(const SubtaskLabels&, const SubtaskLabels&) = default;

 private:
  Subtask subtask_;
  std::bitset<kMaxLabels> bits_;
};

}  // namespace polar
