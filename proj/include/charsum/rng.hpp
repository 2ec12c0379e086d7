#pragma once

#include <cstdint>

namespace charsum {

/* Counter-based deterministic random stream.
 *
 * Every output word is a pure function of (seed, stream, counter), so a
 * sampling job split over any number of workers draws identical values as
 * long as each sample index owns its own stream. This is what makes the
 * histograms bit-identical for 1 and k worker partitions.
 */
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed, uint64_t stream = 0)
      : state_(derive(seed, stream)) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // k uniform bits, 0 <= k <= 64
  uint64_t next_bits(int k) {
    if (k == 0) return 0;
    return next_u64() >> (64 - k);
  }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static uint64_t derive(uint64_t seed, uint64_t stream) {
    uint64_t a = mix(seed + 0x9E3779B97F4A7C15ULL);
    uint64_t b = mix(stream + 0xD1B54A32D192ED03ULL);
    return mix(a ^ (b * 0xFF51AFD7ED558CCDULL + 0x2545F4914F6CDD1DULL));
  }

  uint64_t state_;
};

}  // namespace charsum
