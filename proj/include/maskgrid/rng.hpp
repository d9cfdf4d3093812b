#pragma once

#include <cmath>
#include <cstdint>

namespace maskgrid {

// splitmix64 finalizer; full avalanche, so distinct inputs give
// statistically independent-looking outputs.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator: output i of stream s depends only on
// (seed, s, i), so any index range can be drawn by any worker and the
// combined sequence is identical regardless of how work was split.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed) ^ mix64(stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL)),
        counter_(0) {}

  std::uint64_t next_u64() { return mix64(key_ ^ mix64(counter_++)); }

  // 53-bit mantissa, uniform on [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Box-Muller; one normal deviate per call, pairs not cached and
  // exactly two uniforms consumed, so the stream position stays a pure
  // function of the call count.
  double gaussian() {
    double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace maskgrid
