// atlas - learning program abstractions for example-guided synthesis
// Seeded sampling oracle over strings and positions.

#pragma once

#include <atlas/utf8.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <span>
#include <string_view>
#include <vector>

namespace atlas {

/// FNV-1a; stable across platforms and runs, unlike std::hash.
inline std::uint64_t stable_hash(std::string_view text, std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Derives an independent seed for a named sub-task.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose) {
  std::uint64_t h = stable_hash(purpose, stable_hash(std::to_string(seed)));
  // splitmix64 finalizer
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

/// Finite-support distribution over strings: characters uniform over a fixed
/// alphabet, lengths geometric and capped.
class SamplingOracle {
 public:
  static constexpr std::int64_t kMaxLength = 12;

  SamplingOracle(std::uint64_t seed, std::vector<char32_t> alphabet) : rng_(seed), alphabet_(std::move(alphabet)) {
    if (alphabet_.empty()) alphabet_ = default_alphabet();
  }

  /// a-z, 0-9 plus every code point of the given strings.
  static std::vector<char32_t> alphabet_for(std::span<const Text> corpus) {
    std::set<char32_t> cs;
    for (char32_t c = U'a'; c <= U'z'; ++c) cs.insert(c);
    for (char32_t c = U'0'; c <= U'9'; ++c) cs.insert(c);
    for (const auto& s : corpus) cs.insert(s.begin(), s.end());
    return {cs.begin(), cs.end()};
  }

  static std::vector<char32_t> default_alphabet() { return alphabet_for({}); }

  const std::vector<char32_t>& alphabet() const { return alphabet_; }

  std::int64_t length() {
    std::geometric_distribution<std::int64_t> geo(0.2);
    return std::min(geo(rng_), kMaxLength);
  }

  /// Characters come from a small random sub-alphabet per string so that
  /// repeated characters, and hence equal-character facts, are common.
  Text string() {
    const auto n = length();
    std::uniform_int_distribution<std::size_t> pick(0, alphabet_.size() - 1);
    std::uniform_int_distribution<int> width(1, 4);
    std::vector<char32_t> local(static_cast<std::size_t>(width(rng_)));
    for (auto& c : local) c = alphabet_[pick(rng_)];
    std::uniform_int_distribution<std::size_t> local_pick(0, local.size() - 1);
    Text s;
    for (std::int64_t i = 0; i < n; ++i) s.push_back(local[local_pick(rng_)]);
    return s;
  }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::vector<char32_t> alphabet_;
};

}  // namespace atlas
