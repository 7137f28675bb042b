#pragma once

#include <cstdint>
#include <random>

#include "qgb/scalar.hpp"

namespace qgb {

std::uint64_t splitmix64(std::uint64_t x);

/// Random source for one sample attempt. The stream depends only on
/// (seed, attempt), so sample k is reproducible on its own.
class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t attempt);

  /// p/q with p, q uniform in [-20, 20] \ {0}.
  Scalar rational();
  /// Field value: a rational as above, or a real double in (-2, 2).
  Scalar field(FieldMode mode);
  /// Edge parameter: a rational as above, or a real double in (0, 1).
  Scalar parameter(FieldMode mode);
  int integer(int lo, int hi);
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 rng_;
};

}  // namespace qgb
