#pragma once

#include <cstdint>

namespace stumplab {

// Counter-based generator: every output is a pure function of
// (master seed, stream index, draw counter), so substreams never share
// state and any draw can be recomputed independently.
//
// The mixer is the SplitMix64 finalizer; each stream walks the SplitMix64
// sequence from a key derived from (master, stream index).

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr StreamRng(std::uint64_t key) noexcept : state_(key) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += kSplitMixGamma;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 significant bits.
  constexpr double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t operator()() noexcept { return next_u64(); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~0ull; }

 private:
  std::uint64_t state_;
};

struct Seed {
  std::uint64_t master{0};

  // Substream i is a pure function of (master, i); equal inputs yield
  // bit-identical draw sequences.
  constexpr StreamRng stream(std::uint64_t i) const noexcept {
    return StreamRng(mix64(master ^ mix64(kSplitMixGamma * (i + 1))));
  }
};

}  // namespace stumplab
