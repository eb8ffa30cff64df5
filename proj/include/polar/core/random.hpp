#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <utility>

// All randomness in the toolkit flows through this namespace. A stream is
// keyed by the run seed plus a path of string parts (module, technique,
// record id, ...), so draws never depend on evaluation order.
namespace polar::rng {

inline constexpr std::uint64_t kDefaultSeed = 42;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::string_view> path) {
  std::uint64_t key = splitmix64(seed);
  for (auto part : path) key = splitmix64(key ^ fnv1a64(part));
  return key;
}

// std::mt19937_64 output is fully specified by the standard; the standard
// distributions are not, so bounded and real draws are done here.
class Stream {
 public:
  explicit Stream(std::uint64_t key) : engine_(key) {}
  Stream(std::uint64_t seed, std::initializer_list<std::string_view> path)
      : engine_(derive_key(seed, path)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n), rejection sampled.
  std::size_t below(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::size_t>(x % bound);
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      using std::swap;
      swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace polar::rng
