#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace cbcpir {

/// Seedable deterministic random generator. All protocol randomness flows
/// through one instance so a fixed seed reproduces every artifact
/// (queries, answers, reports) bit for bit across runs and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t word() { return gen_(); }

  /// Uniform value in [0, bound). Mask-and-reject, no platform-dependent
  /// distribution objects.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t span = bound - 1;
    int bits = 64 - __builtin_clzll(span);
    const std::uint64_t mask =
        bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
    for (;;) {
      const std::uint64_t r = gen_() & mask;
      if (r < bound) return r;
    }
  }

  std::array<std::uint8_t, 16> bytes16() {
    std::array<std::uint8_t, 16> out{};
    for (int half = 0; half < 2; ++half) {
      std::uint64_t w = gen_();
      for (int i = 0; i < 8; ++i) {
        out[half * 8 + i] = static_cast<std::uint8_t>(w >> (8 * i));
      }
    }
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cbcpir
