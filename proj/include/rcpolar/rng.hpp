#pragma once
#include <cmath>
#include <cstdint>

namespace rcpolar {

// splitmix64 output mix; bijective on 64 bits
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator. Streams derived from (seed, stream id) are
// independent regardless of thread or call order, which is what makes
// frame-parallel simulation byte-identical to serial runs.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  static Rng stream(uint64_t seed, uint64_t stream_id) {
    return Rng(mix64(seed ^ mix64(stream_id + 0x632be59bd9b4e019ULL)));
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // [0, 1), 53-bit resolution
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  bool coin() { return next_u64() >> 63; }

  uint8_t bit() { return uint8_t(next_u64() >> 63); }

  // uniform integer in [0, bound) by rejection
  uint64_t below(uint64_t bound) {
    uint64_t limit = bound * ((~0ULL) / bound);
    uint64_t v;
    do v = next_u64(); while (v >= limit);
    return v % bound;
  }

  // standard normal, Marsaglia polar method
  double gauss() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rcpolar
