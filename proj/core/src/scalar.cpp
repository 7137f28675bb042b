#include "qgb/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace qgb {

std::string_view to_string(FieldMode mode) {
  return mode == FieldMode::ExactRational ? "exact" : "complex";
}

Scalar::Scalar(mpq_class q) : v_(std::move(q)) {
  std::get<mpq_class>(v_).canonicalize();
}

Scalar Scalar::fraction(long num, long den) {
  if (den == 0) throw DivisionByZero();
  return Scalar(mpq_class(num, den));
}

Scalar Scalar::zero(FieldMode mode) { return from_int(0, mode); }

Scalar Scalar::from_int(long n, FieldMode mode) {
  if (mode == FieldMode::ExactRational) return Scalar(mpq_class(n));
  return Scalar(std::complex<double>(static_cast<double>(n), 0.0));
}

Scalar Scalar::parse(std::string_view text, FieldMode mode) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty scalar literal");
  if (mode == FieldMode::ComplexF64) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      Scalar exact = parse(s, FieldMode::ExactRational);
      return real(exact.to_double());
    }
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw DomainError("bad number '" + s + "'");
    return real(v);
  }
  // exact: "p", "p/q" or a finite decimal "1.25"
  auto dot = s.find('.');
  mpq_class q;
  try {
    if (dot != std::string::npos && s.find('/') == std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("empty");
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
      q = mpq_class(num, den);
    } else {
      if (s[0] == '+') s.erase(0, 1);
      if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a fraction");
      if (q.get_den() == 0) throw DivisionByZero();
    }
  } catch (const std::invalid_argument&) {
    throw DomainError("bad rational '" + std::string(text) + "'");
  }
  q.canonicalize();
  return Scalar(q);
}

const mpq_class& Scalar::rational() const {
  if (!exact()) throw ModeError("exact value requested from a complex scalar");
  return std::get<mpq_class>(v_);
}

std::complex<double> Scalar::complex() const {
  if (exact()) return {std::get<mpq_class>(v_).get_d(), 0.0};
  return std::get<std::complex<double>>(v_);
}

double Scalar::to_double() const { return complex().real(); }

double Scalar::magnitude() const {
  if (exact()) return std::abs(std::get<mpq_class>(v_).get_d());
  return std::abs(std::get<std::complex<double>>(v_));
}

bool Scalar::is_zero() const {
  if (exact()) return sgn(std::get<mpq_class>(v_)) == 0;
  return std::get<std::complex<double>>(v_) == std::complex<double>(0.0, 0.0);
}

std::string Scalar::to_string() const {
  if (exact()) return std::get<mpq_class>(v_).get_str();
  auto z = std::get<std::complex<double>>(v_);
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  return buf;
}

namespace {

void require_same(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) throw ModeError("mixed exact and complex operands");
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same(*this, rhs);
  if (exact()) {
    std::get<mpq_class>(v_) += std::get<mpq_class>(rhs.v_);
  } else {
    std::get<std::complex<double>>(v_) += std::get<std::complex<double>>(rhs.v_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same(*this, rhs);
  if (exact()) {
    std::get<mpq_class>(v_) -= std::get<mpq_class>(rhs.v_);
  } else {
    std::get<std::complex<double>>(v_) -= std::get<std::complex<double>>(rhs.v_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same(*this, rhs);
  if (exact()) {
    std::get<mpq_class>(v_) *= std::get<mpq_class>(rhs.v_);
  } else {
    std::get<std::complex<double>>(v_) *= std::get<std::complex<double>>(rhs.v_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  require_same(*this, rhs);
  if (rhs.is_zero()) throw DivisionByZero();
  if (exact()) {
    std::get<mpq_class>(v_) /= std::get<mpq_class>(rhs.v_);
  } else {
    std::get<std::complex<double>>(v_) /= std::get<std::complex<double>>(rhs.v_);
  }
  return *this;
}

Scalar Scalar::operator-() const {
  if (exact()) return Scalar(mpq_class(-std::get<mpq_class>(v_)));
  return Scalar(-std::get<std::complex<double>>(v_));
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.mode() != rhs.mode()) return false;
  if (lhs.exact()) return std::get<mpq_class>(lhs.v_) == std::get<mpq_class>(rhs.v_);
  return std::get<std::complex<double>>(lhs.v_) == std::get<std::complex<double>>(rhs.v_);
}

Scalar square(const Scalar& s) { return s * s; }

bool agree(const Scalar& lhs, const Scalar& rhs, const Tolerance& tol) {
  if (lhs.exact() && rhs.exact()) return lhs == rhs;
  require_same(lhs, rhs);
  double scale = std::max({lhs.magnitude(), rhs.magnitude(), tol.floor});
  return std::abs(lhs.complex() - rhs.complex()) <= tol.relative * scale;
}

Scalar discrepancy(const Scalar& lhs, const Scalar& rhs, const Tolerance& tol) {
  require_same(lhs, rhs);
  if (lhs.exact()) {
    mpq_class d = lhs.rational() - rhs.rational();
    return Scalar(mpq_class(abs(d)));
  }
  double scale = std::max({lhs.magnitude(), rhs.magnitude(), tol.floor});
  return Scalar::real(std::abs(lhs.complex() - rhs.complex()) / scale);
}

void Residual::observe(const Scalar& value) {
  Scalar v = value.exact() ? Scalar(mpq_class(abs(value.rational()))) : Scalar::real(value.magnitude());
  if (!seen_) {
    max_ = v;
    seen_ = true;
    return;
  }
  if (v.mode() != max_.mode()) throw ModeError("residual modes differ");
  if (v.exact() ? v.rational() > max_.rational() : v.magnitude() > max_.magnitude()) max_ = v;
}

}  // namespace qgb
