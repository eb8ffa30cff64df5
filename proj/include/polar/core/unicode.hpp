#pragma once

#include <string>
#include <string_view>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include "polar/core/error.hpp"

// Thin UTF-8 facade over ICU. Every function takes and returns UTF-8.
namespace polar::unicode {

inline icu::UnicodeString to_icu(std::string_view text) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

inline std::string from_icu(const icu::UnicodeString& text) {
  std::string out;
  text.toUTF8String(out);
  return out;
}

inline bool is_valid_utf8(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

inline std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) throw ValidationError("invalid UTF-8 sequence");
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

inline std::string encode(std::u32string_view code_points) {
  std::string out;
  out.reserve(code_points.size());
  for (char32_t cp : code_points) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
    if (error) throw ValidationError("code point outside the Unicode range");
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

inline std::size_t code_point_count(std::string_view text) { return decode(text).size(); }

inline const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || nfc == nullptr) throw Error("ICU NFC normalizer unavailable");
  return *nfc;
}

inline std::string nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const auto& normalizer = nfc_instance();
  const auto source = to_icu(text);
  if (normalizer.isNormalized(source, status) && U_SUCCESS(status)) return std::string(text);
  status = U_ZERO_ERROR;
  auto result = normalizer.normalize(source, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  return from_icu(result);
}

// Full (possibly length-changing) case mappings with the root locale.
inline std::string to_lower(std::string_view text) {
  auto s = to_icu(text);
  s.toLower(icu::Locale::getRoot());
  return from_icu(s);
}

inline std::string to_upper(std::string_view text) {
  auto s = to_icu(text);
  s.toUpper(icu::Locale::getRoot());
  return from_icu(s);
}

inline UScriptCode script_of(char32_t cp) {
  UErrorCode status = U_ZERO_ERROR;
  const auto script = uscript_getScript(static_cast<UChar32>(cp), &status);
  return U_FAILURE(status) ? USCRIPT_INVALID_CODE : script;
}

inline std::string script_name(char32_t cp) {
  const char* name = uscript_getShortName(script_of(cp));
  return name == nullptr ? "Zzzz" : name;
}

// Common, Inherited and Unknown do not count as a script of their own.
inline bool has_specific_script(char32_t cp) {
  const auto s = script_of(cp);
  return s != USCRIPT_COMMON && s != USCRIPT_INHERITED && s != USCRIPT_UNKNOWN &&
         s != USCRIPT_INVALID_CODE;
}

}  // namespace polar::unicode
