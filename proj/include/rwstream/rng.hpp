#pragma once

#include <cstdint>

namespace rwstream {

// murmur3 64-bit finalizer
constexpr uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

// Small, fast, seedable generator (splitmix64). One per reservoir slot is
// cheap (8 bytes of state), which is what the samplers rely on.
class SplitMix64 {
 public:
  using result_type = uint64_t;

  explicit SplitMix64(uint64_t seed = 0) : state_(seed) {}

  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return ~0ULL; }

  uint64_t operator()() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

namespace detail {
inline uint64_t derive_step(uint64_t s, uint64_t tag) {
  return mix64(s ^ (tag + 0x9e3779b97f4a7c15ULL));
}
}  // namespace detail

// Named substream derivation: every consumer of randomness derives its own
// seed from (master seed, tags...), so runs are reproducible and substreams
// are decorrelated no matter how work is partitioned.
template <typename... Tags>
uint64_t derive_seed(uint64_t seed, Tags... tags) {
  uint64_t s = mix64(seed + 0x9e3779b97f4a7c15ULL);
  ((s = detail::derive_step(s, static_cast<uint64_t>(tags))), ...);
  return s;
}

// Unbiased uniform draw from [0, bound). bound must be >= 1.
template <typename Rng>
uint64_t uniform_below(Rng& rng, uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
  auto lo = static_cast<uint64_t>(m);
  if (lo < bound) {
    const uint64_t threshold = (0 - bound) % bound;
    while (lo < threshold) {
      m = static_cast<unsigned __int128>(rng()) * bound;
      lo = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

}  // namespace rwstream
