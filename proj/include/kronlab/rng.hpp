#pragma once

#include <cstdint>
#include <limits>

namespace kronlab {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Counter-based stream: output i is mix64(key + (i + 1) * gamma).
// Satisfies UniformRandomBitGenerator so std distributions can consume it.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Stream(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGoldenGamma); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

inline std::uint64_t Stream::below(std::uint64_t bound) noexcept {
  unsigned __int128 prod = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(prod);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      prod = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(prod);
    }
  }
  return static_cast<std::uint64_t>(prod >> 64);
}

// key = mix64(mix64(master_seed ^ (tag * gamma)) + trial_index)
constexpr std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t trial_index,
                                   std::uint64_t tag) noexcept {
  return mix64(mix64(master_seed ^ (tag * kGoldenGamma)) + trial_index);
}

inline constexpr const char* kSeedScheme =
    "splitmix64 counter stream; key = mix64(mix64(master_seed ^ tag*0x9e3779b97f4a7c15) + trial)";

}  // namespace kronlab
