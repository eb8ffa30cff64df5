#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polar/augment/confusables_default.hpp"
#include "polar/core/error.hpp"
#include "polar/core/random.hpp"
#include "polar/core/unicode.hpp"

namespace polar::augment {

inline constexpr double kDefaultHomoglyphRate = 0.10;

// Source code point -> visually similar code points from other scripts.
class ConfusablesTable {
 public:
  ConfusablesTable() = default;

  // Throws ValidationError if a pair breaks the table invariants.
  void add(char32_t source, std::vector<char32_t> substitutes) {
    if (substitutes.empty()) throw ValidationError("confusable entry without substitutes");
    if (!unicode::has_specific_script(source)) {
      throw ValidationError("confusable source U+" + hex(source) + " has no specific script");
    }
    for (char32_t s : substitutes) {
      if (s == source) throw ValidationError("substitute equals its source U+" + hex(source));
      if (!unicode::has_specific_script(s) || unicode::script_of(s) == unicode::script_of(source)) {
        throw ValidationError("substitute U+" + hex(s) + " for U+" + hex(source) +
                              " is not from another script");
      }
    }
    auto& slot = entries_[source];
    for (char32_t s : substitutes) {
      bool seen = false;
      for (char32_t existing : slot) seen = seen || existing == s;
      if (!seen) slot.push_back(s);
    }
  }

  const std::vector<char32_t>* find(char32_t source) const {
    auto it = entries_.find(source);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool contains(char32_t source) const { return entries_.count(source) != 0; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::map<char32_t, std::vector<char32_t>>& entries() const noexcept { return entries_; }

  // `source<TAB>sub1 sub2 ...` per line; '#' starts a comment line.
  static ConfusablesTable parse(std::string_view text) {
    ConfusablesTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos) throw ParseError(number, "expected source<TAB>substitutes");
      std::u32string source;
      try {
        source = unicode::decode(std::string_view(line).substr(0, tab));
      } catch (const ValidationError& e) {
        throw ParseError(number, e.what());
      }
      if (source.size() != 1) throw ParseError(number, "source must be a single code point");
      std::vector<char32_t> subs;
      std::istringstream fields(line.substr(tab + 1));
      std::string field;
      while (fields >> field) {
        std::u32string cp;
        try {
          cp = unicode::decode(field);
        } catch (const ValidationError& e) {
          throw ParseError(number, e.what());
        }
        if (cp.size() != 1) throw ParseError(number, "substitute '" + field + "' is not one code point");
        subs.push_back(cp.front());
      }
      try {
        table.add(source.front(), std::move(subs));
      } catch (const ValidationError& e) {
        throw ParseError(number, e.what());
      }
    }
    return table;
  }

  static ConfusablesTable load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open confusables table '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
  }

  static const ConfusablesTable& builtin() {
    static const ConfusablesTable table = parse(kDefaultConfusables);
    return table;
  }

 private:
  static std::string hex(char32_t cp) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04X", static_cast<unsigned>(cp));
    return buf;
  }

  std::map<char32_t, std::vector<char32_t>> entries_;
};

struct HomoglyphResult {
  std::string text;
  std::size_t substitutions = 0;
  std::size_t draws = 0;  // rounds needed to reach at least one substitution
};

// Independently replaces each mappable code point with probability `rate`.
// Rounds are redrawn until at least one substitution happens; after
// kMaxRounds the first mappable position of a fresh permutation is forced.
inline HomoglyphResult homoglyphy_detailed(std::string_view text, const ConfusablesTable& table,
                                           double rate, std::uint64_t key) {
  if (!(rate > 0.0 && rate <= 1.0)) throw ValidationError("homoglyph rate must be in (0, 1]");
  constexpr std::size_t kMaxRounds = 1024;

  const std::u32string source = unicode::decode(text);
  std::vector<std::size_t> mappable;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (table.contains(source[i])) mappable.push_back(i);
  }
  if (mappable.empty()) return {std::string(text), 0, 0};

  rng::Stream stream(key);
  std::u32string out;
  std::size_t count = 0;
  std::size_t round = 0;
  while (count == 0 && round < kMaxRounds) {
    ++round;
    out = source;
    for (std::size_t pos : mappable) {
      if (stream.uniform() < rate) {
        const auto& subs = *table.find(source[pos]);
        out[pos] = subs[stream.below(subs.size())];
        ++count;
      }
    }
  }
  if (count == 0) {
    out = source;
    const std::size_t pos = mappable[stream.below(mappable.size())];
    const auto& subs = *table.find(source[pos]);
    out[pos] = subs[stream.below(subs.size())];
    count = 1;
  }
  return {unicode::encode(out), count, round};
}

inline std::string homoglyphy(std::string_view text, const ConfusablesTable& table, double rate,
                              std::uint64_t seed) {
  return homoglyphy_detailed(text, table, rate, rng::derive_key(seed, {"homoglyph"})).text;
}

}  // namespace polar::augment
