#ifndef ADASTREAM_RANDOM_H_
#define ADASTREAM_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace adastream {

// std::mt19937_64 produces the same sequence on every conforming standard
// library, but the std distributions do not. These helpers keep every seeded
// artifact byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

  // Box-Muller; one draw per call.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace adastream

#endif  // ADASTREAM_RANDOM_H_
