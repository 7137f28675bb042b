#pragma once

#include "qgb/lattice.hpp"

namespace qgb {

/// f(v1) from Q(g(v), g(v1), f(v), f(v1); alpha, lambda) = 0.
Scalar backlund_step(const BulkEquation& eq, const Scalar& g_v, const Scalar& g_v1,
                     const Scalar& f_v, const Scalar& alpha, const Scalar& lambda);

struct BacklundResult {
  FieldAssignment first;  // f: solves the bulk faces only
  FieldAssignment top;    // g+: a full solution
};

/// Three-floor construction: f spreads from f(seed_vertex) = seed_value along
/// the vertical faces (alpha, lambda); at boundary vertices
/// q(g, f, g+; lambda) = 0 fixes g+, which then spreads along the vertical
/// faces (alpha, sigma(lambda)). The result is re-checked face by face.
/// Errors: BacklundError for degenerate input or propagation, VerificationError
/// when a re-check fails.
BacklundResult backlund_transform(const QuadGraphB& g, const BulkEquation& eq,
                                  const BoundaryEquation& beq, const FieldAssignment& ground,
                                  const Scalar& lambda, const Scalar& seed_value, int seed_vertex);

}  // namespace qgb
