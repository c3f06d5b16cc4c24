#pragma once

#include <cstdint>
#include <random>

#include "rootreg/rational.hpp"

namespace rootreg {

// Deterministic random source.  std::uniform_real_distribution is
// implementation-defined, so doubles are derived from raw bits to keep
// seeded output byte-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // uniform in [-2,-1/2] U [1/2,2], bounded away from zero
  double unit_band() {
    double m = 0.5 + 1.5 * unit();
    return (gen_() & 1) ? m : -m;
  }

  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

  // dyadic rational in [lo, hi] with denominator 2^k (exact in double too)
  Rational dyadic(int lo, int hi, int k = 4) {
    std::int64_t span = (static_cast<std::int64_t>(hi) - lo) << k;
    std::int64_t t = static_cast<std::int64_t>(below(static_cast<std::uint64_t>(span + 1)));
    return Rational(Integer(lo) * (Integer(1) << k) + t, Integer(1) << k);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rootreg
