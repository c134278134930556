#pragma once

// Reproducible randomness.
//
// Every random decision in the library comes from std::mt19937_64, whose
// output sequence is fixed by the C++ standard (the 10000th output of a
// default-seeded engine is 9981545732273789042). Uniform variates are taken
// from the top 53 bits of one engine output, never from
// std::uniform_real_distribution, whose algorithm is implementation-defined.
// Sub-seeds are mixed with SplitMix64 (Steele, Lea & Flood 2014).

#include <cstdint>
#include <random>

namespace hebchar {

using Engine = std::mt19937_64;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) with 53 bits of resolution.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Deterministic sub-seed for stream (a, b) under `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

}  // namespace hebchar
