// Copyright 2026 The cornerlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>

namespace cornerlab {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Hash of an ordered tuple of words; used to derive stream keys.
constexpr std::uint64_t hash_words(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(mix64(a + 0x9e3779b97f4a7c15ull) ^ (b * 0xd1b54a32d192ed03ull + 0x8cb92ba72f3d8dd7ull));
}

constexpr std::uint64_t hash_words(std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
  return hash_words(hash_words(a, b), c);
}

/// Counter-based generator: output k is a pure function of (key, k).
///
/// A sample identified by (master_seed, job, index) gets the key
/// hash_words(master_seed, job, index). Results never depend on which worker
/// draws the sample or in what order.
class KeyedRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr KeyedRng(std::uint64_t key) noexcept : key_(key) {}
  constexpr KeyedRng(std::uint64_t master, std::uint64_t job, std::uint64_t index) noexcept
      : key_(hash_words(master, job, index)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return at(counter_++); }

  /// Random access into the stream without advancing it.
  [[nodiscard]] constexpr result_type at(std::uint64_t k) const noexcept {
    return mix64(key_ ^ mix64(k * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  [[nodiscard]] constexpr std::uint64_t key() const noexcept { return key_; }
  [[nodiscard]] constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform double in [0, 1) from a raw word.
constexpr double to_unit(std::uint64_t w) noexcept {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

}  // namespace cornerlab
