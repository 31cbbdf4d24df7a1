// Copyright 2026 The srlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace srlab {

/// Finalizer of the SplitMix64 generator (see https://prng.di.unimi.it).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Counter-based uniform stream.
///
/// The k-th 64-bit output of a stream with key K is mix64(K + k * gamma),
/// i.e. SplitMix64 started at state K. A stream is fully described by
/// (key, counter), so draws are reproducible on every platform and any
/// number of independent substreams can be derived from one seed without
/// shared state: substream(i) hashes (key, i) into a fresh key.
class RandomStream {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

  explicit constexpr RandomStream(std::uint64_t seed) noexcept
      : key_(mix64(seed + kGamma)) {}

  /// Independent child stream; does not advance this stream.
  [[nodiscard]] constexpr RandomStream substream(
      std::uint64_t index) const noexcept {
    return RandomStream(key_tag{}, mix64(key_ ^ mix64(index + kGamma)));
  }

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  [[nodiscard]] constexpr std::uint64_t key() const noexcept { return key_; }
  [[nodiscard]] constexpr std::uint64_t draws() const noexcept {
    return counter_;
  }

 private:
  struct key_tag {};
  constexpr RandomStream(key_tag, std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace srlab
