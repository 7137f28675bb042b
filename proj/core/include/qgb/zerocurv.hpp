#pragma once

#include <cstdint>

#include "qgb/catalog.hpp"
#include "qgb/moebius.hpp"
#include "qgb/report.hpp"

namespace qgb {

/// K(x;a) with act(K, u) = k(x, u; a).
Moebius2 moebius_of_k(const BoundaryEquation& beq, const Scalar& x, const Scalar& a);

/// Unnormalised L(y, x, a; b): maps u01 to the u11 solving Q(x, y, u01, u11; a, b) = 0.
Moebius2 build_L(const BulkEquation& eq, const Scalar& y, const Scalar& x, const Scalar& a,
                 const Scalar& b);

struct ZcrOptions {
  /// Push the solved vertex off the solution locus by adding 1.
  bool off_locus = false;
  /// Multiply every L and K by an independent random nonzero scalar.
  bool rescale = false;
};

ZcrReport check_zcr_bulk(const BulkEquation& eq, int samples, std::uint64_t seed,
                         const ZcrOptions& options = {});

/// K(z;c) L(z,y,s(a);c) L(y,x,a;c) ~ L(z,y,s(a);s(c)) L(y,x,a;s(c)) K(x;c) with q(x,y,z;a)=0.
ZcrReport check_zcr_boundary(const BulkEquation& eq, const BoundaryEquation& beq, int samples,
                             std::uint64_t seed, const ZcrOptions& options = {});

/// H(m, lambda) = ((g, (-1)^m (2 lambda + 1) a), ((-1)^m (2 lambda + 1) b, g)).
Moebius2 hk_H(int m, const Scalar& lambda, const Scalar& a, const Scalar& b, const Scalar& gamma);

struct HkReport {
  CheckResult fusion;     // L L ~ L(q0, q1, s(a)-a; c-a), plus the exact factor c
  CheckResult k_to_h;     // K(x_m; c) = (-1)^m H(m, lambda)
  CheckResult spectral;   // s(c) corresponds to lambda -> -lambda - 1
  bool passed() const { return fusion.passed && k_to_h.passed && spectral.passed; }
};

/// Q1d0 with the boundary row of sigma(a) = -a + 2 mu and q = y(x+z).
HkReport check_fusion_hk(const Scalar& mu, int samples, std::uint64_t seed);

}  // namespace qgb
