#pragma once

#include <cstdint>

#include "qgb/catalog.hpp"
#include "qgb/report.hpp"

namespace qgb {

struct CubeOptions {
  /// Face (0..5) whose equation gets `offset` added; -1 for none.
  int mutate_face = -1;
  Scalar offset = Scalar(1);
};

/// u111 computed three ways around the cube from u000, u100, u010, u001.
ConsistencyReport check_cube(const BulkEquation& eq, int samples, std::uint64_t seed,
                             const CubeOptions& options = {});

struct DodecaSample {
  Scalar x, x1, x2;
  Scalar a, b;
};

struct DodecaTrace {
  DodecaSample in;
  Scalar sigma_a, sigma_b;
  Scalar y1, y2, y3;
  Scalar z1, z2;
  Scalar w1, w2, w3;  // from q(y2,z2,w;b), q(y3,z1,w;a), Q(y1,z1,z2,w;s(b),s(a))

  Json to_json() const;
};

/// The three-route computation of w on half a rhombic dodecahedron. Throws
/// SingularSample when any intermediate solve degenerates.
DodecaTrace trace_half_dodecahedron(const BulkEquation& eq, const BoundaryEquation& beq,
                                    const DodecaSample& sample);

ConsistencyReport check_boundary_consistency(const BulkEquation& eq, const BoundaryEquation& beq,
                                             int samples, std::uint64_t seed);

/// q = 0 and Q(x, u, k(x,u;a), z; a, sigma(a)) = 0 have the same solutions z.
FoldReport check_fold(const BulkEquation& eq, const BoundaryEquation& beq, int samples,
                      std::uint64_t seed);

}  // namespace qgb
