#pragma once

#include <cstdint>
#include <random>

namespace qldpc {

/// Engine used everywhere randomness is consumed. mt19937_64 output is fully
/// specified by the standard, so streams are reproducible across platforms.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of substream (stream, index) under a master seed. Trials are keyed by
/// index, so results do not depend on how trials are spread over workers.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
  return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

__extension__ typedef unsigned __int128 Uint128;

/// Uniform integer in [0, bound) by 128-bit multiply-shift (one draw).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  return static_cast<std::uint64_t>((static_cast<Uint128>(rng()) * bound) >> 64);
}

}  // namespace qldpc
