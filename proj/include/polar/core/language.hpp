#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "polar/core/error.hpp"

namespace polar {

// The 22 languages of the shared task, in leaderboard order.
enum class Language : std::uint8_t {
  amh, arb, ben, deu, eng, fas, hau, hin, ita, khm, mya,
  nep, ori, pan, pol, rus, spa, swa, tel, tur, urd, zho
};

inline constexpr std::size_t kLanguageCount = 22;

inline constexpr std::array<std::string_view, kLanguageCount> kLanguageCodes = {
    "amh", "arb", "ben", "deu", "eng", "fas", "hau", "hin", "ita", "khm", "mya",
    "nep", "ori", "pan", "pol", "rus", "spa", "swa", "tel", "tur", "urd", "zho"};

inline constexpr std::array<Language, kLanguageCount> all_languages() {
  std::array<Language, kLanguageCount> out{};
  for (std::size_t i = 0; i < kLanguageCount; ++i) out[i] = static_cast<Language>(i);
  return out;
}

inline constexpr std::string_view to_string(Language lang) {
  return kLanguageCodes[static_cast<std::size_t>(lang)];
}

inline constexpr std::size_t index_of(Language lang) { return static_cast<std::size_t>(lang); }

inline Language parse_language(std::string_view code) {
  for (std::size_t i = 0; i < kLanguageCount; ++i) {
    if (kLanguageCodes[i] == code) return static_cast<Language>(i);
  }
  throw ValidationError("unknown language code '" + std::string(code) + "'");
}

// Manifestation identification (subtask 3) was not run for these four.
inline constexpr bool eligible_for_subtask3(Language lang) {
  return lang != Language::ita && lang != Language::mya && lang != Language::pol &&
         lang != Language::rus;
}

}  // namespace polar
