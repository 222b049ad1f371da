#pragma once

#include <cstdint>
#include <string_view>

namespace tac {

// Stateless random draws keyed by a tuple of integers. Used where a draw must
// depend only on "where" it happens (document, position, iteration) and not
// on the order in which draws are made.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_keys(std::uint64_t seed) { return splitmix64(seed); }

template <typename... Rest>
constexpr std::uint64_t mix_keys(std::uint64_t seed, std::uint64_t key, Rest... rest) {
  return mix_keys(splitmix64(seed ^ splitmix64(key)), static_cast<std::uint64_t>(rest)...);
}

// Uniform double in [0, 1).
template <typename... Keys>
constexpr double keyed_uniform(std::uint64_t seed, Keys... keys) {
  return static_cast<double>(mix_keys(seed, static_cast<std::uint64_t>(keys)...) >> 11) *
         0x1.0p-53;
}

// FNV-1a; stable across platforms, unlike std::hash.
constexpr std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace tac
