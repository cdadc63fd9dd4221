#pragma once

#include <cstdint>
#include <random>

namespace sketchsdp {

using Rng = std::mt19937_64;

/// Deterministically derives an independent 64-bit seed for sub-stream
/// `stream` of `seed` (splitmix64 finalizer applied twice).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Random stream for (seed, stream); schedule-independent by construction.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Stable 64-bit FNV-1a hash over a sequence of indices (used to fingerprint
/// sketches in trial logs).
template <typename Range>
std::uint64_t hash_indices(const Range& indices) {
  std::uint64_t h = 14695981039346656037ULL;
  for (auto v : indices) {
    auto x = static_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace sketchsdp
