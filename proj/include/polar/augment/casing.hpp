#pragma once

#include <string>
#include <string_view>

#include "polar/core/unicode.hpp"

namespace polar::augment {

// Full Unicode case mapping; caseless scripts pass through untouched.
inline std::string to_lowercase(std::string_view text) { return unicode::to_lower(text); }
inline std::string to_uppercase(std::string_view text) { return unicode::to_upper(text); }

}  // namespace polar::augment
