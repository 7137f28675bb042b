#pragma once

#include <array>
#include <functional>

#include "qgb/scalar.hpp"

namespace qgb {

/// 2x2 matrix ((a, b), (c, d)) acting by u -> (a u + b) / (c u + d).
struct Moebius2 {
  Scalar a, b, c, d;

  static Moebius2 identity(FieldMode mode);

  FieldMode mode() const { return a.mode(); }
  Scalar det() const { return a * d - b * c; }
  /// Throws DivisionByZero at the pole.
  Scalar act(const Scalar& u) const;
  Moebius2 scaled(const Scalar& s) const { return {a * s, b * s, c * s, d * s}; }
  std::array<Scalar, 4> entries() const { return {a, b, c, d}; }

  friend Moebius2 operator*(const Moebius2& m, const Moebius2& n);
  friend bool operator==(const Moebius2& m, const Moebius2& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
  }
};

/// Projective distance between two matrices: the largest 2x2 minor of the
/// stacked entries (exact), or the relative residual of the best scalar fit
/// n ~ s m (complex). Zero (or below tolerance) means proportional.
Scalar projective_residual(const Moebius2& m, const Moebius2& n, const Tolerance& tol = {});
bool proportional(const Moebius2& m, const Moebius2& n, const Tolerance& tol = {});

/// Recovers (a, b, c, d) with f(u) = (a u + b)/(c u + d) from values of f at
/// a few points, then confirms at two further points. Throws UnsupportedK if
/// f is not of that form, SingularSample when too few sample points are
/// regular.
Moebius2 moebius_fit(const std::function<Scalar(const Scalar&)>& f, FieldMode mode,
                     const Tolerance& tol = {});

/// The zero of a Moebius function: -b/a. Throws SingularSolve if a vanishes
/// or the candidate is also a pole.
Scalar moebius_root(const Moebius2& m, const Tolerance& tol = {});

}  // namespace qgb
