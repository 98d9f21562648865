#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
// A stream is keyed by a 64-bit seed and a 64-bit stream id; the block
// counter runs in the low two words. Stream (seed, i) never overlaps
// stream (seed, j) for i != j.

#include <array>
#include <cstdint>
#include <limits>

namespace tgmaps {

using Philox4x32Block = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

inline Philox4x32Block philox4x32_10(Philox4x32Block ctr, Philox4x32Key key) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += W0;
    key[1] += W1;
  }
  return ctr;
}

/// UniformRandomBitGenerator over 32-bit words.
class PhiloxStream {
 public:
  using result_type = std::uint32_t;

  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (used_ == 4) refill();
    return buf_[used_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = (*this)();
    return (hi << 32) | (*this)();
  }

  /// Uniform in [0, bound), bound >= 1 (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= (1ull << 32)) {
      const auto b = static_cast<std::uint32_t>(bound == (1ull << 32) ? 0 : bound);
      if (b == 0) return (*this)();
      std::uint64_t m = static_cast<std::uint64_t>((*this)()) * b;
      auto low = static_cast<std::uint32_t>(m);
      if (low < b) {
        const std::uint32_t t = static_cast<std::uint32_t>(-b) % b;
        while (low < t) {
          m = static_cast<std::uint64_t>((*this)()) * b;
          low = static_cast<std::uint32_t>(m);
        }
      }
      return m >> 32;
    }
    // Wide bounds: plain rejection on 64-bit words.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = next_u64();
    while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t blocks_used() const { return counter_; }

 private:
  void refill() {
    buf_ = philox4x32_10({static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                          static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                         key_);
    ++counter_;
    used_ = 0;
  }

  Philox4x32Key key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  Philox4x32Block buf_{};
  int used_ = 4;
};

}  // namespace tgmaps
