#include "qgb/sampling.hpp"

namespace qgb {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Sampler::Sampler(std::uint64_t seed, std::uint64_t attempt)
    : rng_(splitmix64(splitmix64(seed) ^ (attempt * 0x2545f4914f6cdd1dULL + 1))) {}

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

Scalar Sampler::rational() {
  auto nonzero = [this] {
    int v = integer(-19, 20);
    return v <= 0 ? v - 1 : v;  // [-20,-1] u [1,20]
  };
  long p = nonzero();
  long q = nonzero();
  return Scalar::fraction(p, q);
}

Scalar Sampler::field(FieldMode mode) {
  if (mode == FieldMode::ExactRational) return rational();
  return Scalar::real(uniform(-2.0, 2.0));
}

Scalar Sampler::parameter(FieldMode mode) {
  if (mode == FieldMode::ExactRational) return rational();
  return Scalar::real(uniform(0.05, 0.95));
}

}  // namespace qgb
