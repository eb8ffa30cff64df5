#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include <unicode/regex.h>

#include "polar/core/error.hpp"
#include "polar/core/unicode.hpp"

namespace polar::augment {

// Replacement tags, applied in this order: an email contains '@', so emails
// go before mentions; mentions go before phones.
inline constexpr std::string_view kEmailTag = "[EMAIL]";
inline constexpr std::string_view kUserTag = "[USER]";
inline constexpr std::string_view kPhoneTag = "[PHONE]";

namespace patterns {
// local@domain with at least one dot in the domain.
inline constexpr const char* kEmail = R"([\w.%+\-]+@[\w\-]+(?:\.[\w\-]+)+)";
// '@' followed by two or more word characters, not preceded by a word character.
inline constexpr const char* kMention = R"((?<!\w)@\w{2,})";
// Seven or more digits with optional '+' prefix; space, dash, dot and
// parentheses may separate the digits.
inline constexpr const char* kPhone = R"((?<![\w+])\+?\(?\d(?:[ .\-()]{0,2}\d){6,}\)?(?!\w))";
}  // namespace patterns

namespace detail {

inline std::unique_ptr<icu::RegexPattern> compile(const char* pattern) {
  UErrorCode status = U_ZERO_ERROR;
  UParseError parse_error;
  std::unique_ptr<icu::RegexPattern> p(
      icu::RegexPattern::compile(icu::UnicodeString::fromUTF8(pattern), 0, parse_error, status));
  if (U_FAILURE(status)) throw Error(std::string("invalid anonymization pattern: ") + pattern);
  return p;
}

inline icu::UnicodeString replace_all(const icu::RegexPattern& pattern,
                                      const icu::UnicodeString& text, std::string_view tag) {
  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<icu::RegexMatcher> m(pattern.matcher(text, status));
  if (U_FAILURE(status)) throw Error("regex matcher creation failed");
  // The tags contain no '$' or '\', so they are literal replacements.
  auto out = m->replaceAll(unicode::to_icu(tag), status);
  if (U_FAILURE(status)) throw Error("regex replacement failed");
  return out;
}

struct AnonymizationPatterns {
  std::unique_ptr<icu::RegexPattern> email = compile(patterns::kEmail);
  std::unique_ptr<icu::RegexPattern> mention = compile(patterns::kMention);
  std::unique_ptr<icu::RegexPattern> phone = compile(patterns::kPhone);
};

inline const AnonymizationPatterns& anonymization_patterns() {
  static const AnonymizationPatterns instance;
  return instance;
}

}  // namespace detail

// Replaces emails, user mentions and phone numbers by [EMAIL], [USER] and
// [PHONE]. Total and idempotent.
inline std::string anonymize(std::string_view text) {
  const auto& p = detail::anonymization_patterns();
  auto s = unicode::to_icu(text);
  // A tag can expose a match that the look-behind rejected in the original
  // ("@ab@cd" -> "[USER]@cd"), so repeat to a fixed point. Each pass that
  // changes anything removes an '@' or a digit, so this terminates.
  for (;;) {
    auto next = detail::replace_all(*p.email, s, kEmailTag);
    next = detail::replace_all(*p.mention, next, kUserTag);
    next = detail::replace_all(*p.phone, next, kPhoneTag);
    if (next == s) break;
    s = std::move(next);
  }
  return unicode::from_icu(s);
}

}  // namespace polar::augment
