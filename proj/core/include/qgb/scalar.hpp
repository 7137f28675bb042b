#pragma once

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <string>
#include <string_view>
#include <variant>

#include "qgb/errors.hpp"

namespace qgb {

enum class FieldMode { ExactRational, ComplexF64 };

std::string_view to_string(FieldMode mode);

/// Field element used by every evaluator: an exact reduced rational, or a
/// complex double for the elliptic family.
///
/// Binary operations require both operands in the same mode and throw
/// ModeError otherwise. Integer literals adopt the mode of the other operand,
/// so formulas such as `2 * a * b` work in both modes. Division by an exact
/// zero throws DivisionByZero in either mode.
class Scalar {
 public:
  Scalar() : v_(mpq_class(0)) {}
  Scalar(int n) : v_(mpq_class(n)) {}   // NOLINT(google-explicit-constructor)
  Scalar(long n) : v_(mpq_class(n)) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class q);
  explicit Scalar(std::complex<double> z) : v_(z) {}

  static Scalar fraction(long num, long den);
  static Scalar real(double x) { return Scalar(std::complex<double>(x, 0.0)); }
  /// Parses "p", "p/q", or (complex mode) a decimal literal such as "0.25".
  static Scalar parse(std::string_view text, FieldMode mode = FieldMode::ExactRational);
  static Scalar zero(FieldMode mode);
  static Scalar from_int(long n, FieldMode mode);

  FieldMode mode() const noexcept {
    return std::holds_alternative<mpq_class>(v_) ? FieldMode::ExactRational : FieldMode::ComplexF64;
  }
  bool exact() const noexcept { return mode() == FieldMode::ExactRational; }

  const mpq_class& rational() const;
  std::complex<double> complex() const;
  /// Real part as a double (exact values are converted).
  double to_double() const;
  double magnitude() const;

  bool is_zero() const;
  std::string to_string() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  Scalar operator-() const;

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  template <std::integral I>
  friend Scalar operator+(const Scalar& lhs, I rhs) { return lhs + from_int(rhs, lhs.mode()); }
  template <std::integral I>
  friend Scalar operator+(I lhs, const Scalar& rhs) { return from_int(lhs, rhs.mode()) + rhs; }
  template <std::integral I>
  friend Scalar operator-(const Scalar& lhs, I rhs) { return lhs - from_int(rhs, lhs.mode()); }
  template <std::integral I>
  friend Scalar operator-(I lhs, const Scalar& rhs) { return from_int(lhs, rhs.mode()) - rhs; }
  template <std::integral I>
  friend Scalar operator*(const Scalar& lhs, I rhs) { return lhs * from_int(rhs, lhs.mode()); }
  template <std::integral I>
  friend Scalar operator*(I lhs, const Scalar& rhs) { return from_int(lhs, rhs.mode()) * rhs; }
  template <std::integral I>
  friend Scalar operator/(const Scalar& lhs, I rhs) { return lhs / from_int(rhs, lhs.mode()); }
  template <std::integral I>
  friend Scalar operator/(I lhs, const Scalar& rhs) { return from_int(lhs, rhs.mode()) / rhs; }

  /// Exact equality; values in different modes never compare equal.
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);

 private:
  std::variant<mpq_class, std::complex<double>> v_;
};

Scalar square(const Scalar& s);

/// Comparison policy for "the same value": exact equality for rationals, a
/// relative tolerance with a clamped denominator for complex doubles.
struct Tolerance {
  double relative = 1e-9;
  double floor = 1e-30;
};

bool agree(const Scalar& lhs, const Scalar& rhs, const Tolerance& tol = {});

/// Size of a discrepancy in the units used by reports: |lhs - rhs| exactly for
/// rationals, relative |lhs - rhs| / max(|lhs|, |rhs|, floor) for doubles.
Scalar discrepancy(const Scalar& lhs, const Scalar& rhs, const Tolerance& tol = {});

/// Running maximum of discrepancies; keeps exact values exact.
class Residual {
 public:
  void observe(const Scalar& value);
  bool is_zero() const { return !seen_ || max_.is_zero(); }
  const Scalar& value() const { return max_; }
  bool seen() const { return seen_; }
  std::string to_string() const { return seen_ ? max_.to_string() : "0"; }

 private:
  bool seen_ = false;
  Scalar max_;
};

}  // namespace qgb
