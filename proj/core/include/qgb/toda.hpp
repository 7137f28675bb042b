#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgb/lattice.hpp"

namespace qgb {

/// phi(y; a) = phi(y, k(y; a); a, sigma(a)) for Q1d0 rows. Rows whose k also
/// depends on the boundary value need `xbar` (NeedsBoundaryValue otherwise).
Scalar boundary_leg(const BoundaryEquation& beq, const Scalar& y, const Scalar& a,
                    const std::optional<Scalar>& xbar = std::nullopt);

/// Sum of the legs around a white vertex of a Q1d0 field: quads contribute
/// phi(w, opposite; a_k, a_{k+1}), triangles their boundary leg. Empty when
/// the faces around `white` do not close into a cycle.
std::optional<Scalar> star_sum(const QuadGraphB& g, const BoundaryEquation* beq,
                               const FieldAssignment& field, int white);

/// Field q_{m,n}, 0 <= m <= steps, 0 <= n <= width, with boundary values
/// xbar_m on the black boundary row.
struct TodaLattice {
  int width = 6;
  int steps = 6;
  Scalar a;
  Scalar mu;
  Scalar xbar0;
  std::string row = "Q1d0.b3";
  std::vector<std::vector<std::optional<Scalar>>> q;
  std::vector<Scalar> xbar;

  TodaLattice() = default;
  TodaLattice(int width, int steps, Scalar a, Scalar mu, Scalar xbar0, std::string row = "Q1d0.b3");

  BoundaryEquation boundary() const;
  const Scalar& at(int m, int n) const;
  std::string to_csv() const;
  Json to_json() const;
};

/// Left minus right side of the Toda equation at (m, n).
Scalar toda_residual(const TodaLattice& lat, int m, int n);

/// Fills columns m = 2..steps from m = 0, 1: interior sites by the Toda
/// equation, n = 0 by q_{m,0} = k(xbar_m, q_{m,1}; a), n = width by the affine
/// extension of the initial data. Throws BreakdownError on coincident values.
void toda_evolve(TodaLattice& lat, int steps);

/// Random columns m = 0, 1 (q_{m,1} nonzero) with q_{m,0} taken from k, so
/// that the data are compatible with the boundary row.
void seed_columns(TodaLattice& lat, std::uint64_t seed);

/// Interior Toda residuals and the boundary residuals q_{m,0} - k(xbar_m, q_{m,1})
/// over every site where they are defined.
std::vector<CheckResult> toda_checks(const TodaLattice& lat);

struct CrossOptions {
  int width = 6;
  int steps = 6;
  Scalar a = Scalar::fraction(3, 2);
  Scalar mu = Scalar::fraction(5, 7);
  Scalar xbar0 = Scalar::fraction(2, 3);
  std::uint64_t seed = 1;
  /// Added to mu inside the boundary check only (negative control).
  Scalar mu_shift = Scalar(0);
};

struct CrossReport {
  CheckResult toda;         // interior stars
  CheckResult boundary;     // q_{m,0} against the closed-form k
  CheckResult alternation;  // xbar_m = (-1)^m xbar_0
  CheckResult star;         // leg sums on the quad-graph
  CheckResult evolve;       // toda_evolve against the propagated field
  TodaLattice extracted;
  bool passed() const {
    return toda.passed && boundary.passed && alternation.passed && star.passed && evolve.passed;
  }
  std::vector<CheckResult> checks() const { return {toda, boundary, alternation, star, evolve}; }
};

/// Propagates Q1d0 with the row sigma(a) = -a + 2 mu, q = y(x+z) on a strip,
/// extracts the white sublattice and checks the Toda reduction.
CrossReport crosscheck_reduction(const CrossOptions& options);

}  // namespace qgb
