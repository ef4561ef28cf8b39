#pragma once

#include <cstdint>

namespace mhiforge {

// PCG-XSH-RR 32-bit generator. Pinned here (instead of <random> engines +
// distributions) so seeded outputs are identical across platforms and
// standard libraries; golden images and datasets depend on that.
class Pcg32 {
 public:
  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0) {
    inc_ = (stream << 1u) | 1u;
    state_ = 0u;
    next();
    state_ += seed;
    next();
  }

  std::uint32_t next() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ull + inc_;
    std::uint32_t xorshifted =
        static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  // uniform over [0, bound), rejection-sampled to avoid modulo bias
  std::uint32_t bounded(std::uint32_t bound) {
    if (bound <= 1) return 0;
    std::uint32_t threshold = (0u - bound) % bound;
    for (;;) {
      std::uint32_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // uniform integer over [lo, hi] inclusive
  int range(int lo, int hi) {
    return lo + static_cast<int>(
                    bounded(static_cast<std::uint32_t>(hi - lo + 1)));
  }

  // uniform double in [0, 1)
  double uniform() { return next() * (1.0 / 4294967296.0); }

  // uniform double in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 1;
};

}  // namespace mhiforge
