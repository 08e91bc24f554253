// SPDX-License-Identifier: Apache-2.0
//
// cachebc: delivery-time and GDoF analysis for the symmetric cache-aided
// MISO broadcast channel with partial CSIT.

#ifndef CACHEBC_RNG_HPP
#define CACHEBC_RNG_HPP

#include <array>
#include <cstdint>

namespace cachebc {

// Pseudorandom generator used everywhere randomness is needed. The exact
// algorithm is part of the output contract: identical seeds must reproduce
// identical caches, channel draws and logs byte-for-byte, on any platform.
// Never swap this for std:: distributions (their output is
// implementation-defined).
//
// Generator id: "xoshiro256ss-1" (xoshiro256** seeded through SplitMix64).

inline constexpr const char* kRngVersion = "xoshiro256ss-1";

/// Default seed for every seeded workflow (library content, placement,
/// sampled scans, channel draws); overridable wherever a seed is accepted.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// SplitMix64 step; also used standalone to mix seeds for substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent substream seed from a base seed and a stream tag.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) {
  std::uint64_t s = base ^ (0xa0761d6478bd642fULL + tag * 0xe7037ed1a0b428dbULL);
  return splitmix64(s);
}

class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound) without modulo bias (rejection sampling).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace cachebc

#endif  // CACHEBC_RNG_HPP
