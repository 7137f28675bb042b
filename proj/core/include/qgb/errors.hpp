#pragma once

#include <stdexcept>
#include <string>

namespace qgb {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Mixed ExactRational / ComplexF64 operands.
class ModeError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  using Error::Error;
};

/// The linear coefficient of the requested unknown vanished.
class SingularSolve : public Error {
 public:
  using Error::Error;
};

/// Raised by a single-sample trace when some solve degenerates; samplers
/// discard such samples.
class SingularSample : public Error {
 public:
  using Error::Error;
};

/// Too many samples were degenerate to decide anything.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

class UnsupportedK : public Error {
 public:
  using Error::Error;
};

class SingularL : public Error {
 public:
  using Error::Error;
};

class UnknownId : public Error {
 public:
  using Error::Error;
};

class PropagationError : public Error {
 public:
  PropagationError(std::string what, int face) : Error(std::move(what)), face_(face) {}
  int face() const noexcept { return face_; }

 private:
  int face_;
};

/// Initial data that leaves vertices undetermined.
class IllPosedError : public Error {
 public:
  IllPosedError(std::string what, int vertex) : Error(std::move(what)), vertex_(vertex) {}
  int vertex() const noexcept { return vertex_; }

 private:
  int vertex_;
};

class ContradictionError : public Error {
 public:
  ContradictionError(std::string what, int face) : Error(std::move(what)), face_(face) {}
  int face() const noexcept { return face_; }

 private:
  int face_;
};

class BacklundError : public Error {
 public:
  using Error::Error;
};

/// A result that would falsify a proven identity.
class VerificationError : public Error {
 public:
  using Error::Error;
};

class BreakdownError : public Error {
 public:
  BreakdownError(std::string what, int m, int n) : Error(std::move(what)), m_(m), n_(n) {}
  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }

 private:
  int m_, n_;
};

class NeedsBoundaryValue : public Error {
 public:
  using Error::Error;
};

class DerivationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgb
