#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qgb/elliptic.hpp"
#include "qgb/scalar.hpp"

namespace qgb {

enum class Family { Q1, Q2, Q3, Q4, H1, H2, H3, A1, A2 };
enum class Corner { U00 = 0, U10 = 1, U01 = 2, U11 = 3 };

/// An ABS quad equation Q(u00,u10,u01,u11;a,b).
class BulkEquation {
 public:
  BulkEquation(Family family, int delta = 0, EllipticModulus modulus = {});

  Family family() const { return family_; }
  int delta() const { return delta_; }
  const EllipticModulus& modulus() const { return modulus_; }
  std::string id() const;
  FieldMode mode() const {
    return family_ == Family::Q4 ? FieldMode::ComplexF64 : FieldMode::ExactRational;
  }

  Scalar eval(const Scalar& u00, const Scalar& u10, const Scalar& u01, const Scalar& u11,
              const Scalar& a, const Scalar& b) const;

  /// Same equation plus a constant; used to build negative controls.
  BulkEquation with_offset(const Scalar& offset) const;
  bool mutated() const { return !offset_.is_zero(); }

 private:
  Family family_;
  int delta_;
  EllipticModulus modulus_;
  Scalar offset_;
};

/// Known ids: Q1d0 Q1d1 Q2 Q3d0 Q3d1 Q4 H1 H2 H3d0 H3d1 A1d0 A1d1 A2.
const std::vector<std::string>& bulk_ids();
BulkEquation bulk_equation(std::string_view id, EllipticModulus modulus = {});

Scalar eval_bulk(const BulkEquation& eq, const Scalar& u00, const Scalar& u10,
                 const Scalar& u01, const Scalar& u11, const Scalar& a, const Scalar& b);

/// Value of corner `which` making Q vanish; the entry of `u` at that corner is
/// ignored. Throws SingularSolve when the linear coefficient vanishes.
Scalar solve_vertex(const BulkEquation& eq, Corner which, std::array<Scalar, 4> u,
                    const Scalar& a, const Scalar& b);

/// Root of an affine function given by its values at 0 and 1.
Scalar affine_root(const std::function<Scalar(const Scalar&)>& f, FieldMode mode);

struct RowParams {
  Scalar mu;
  double modulus = 0.6;
};

using SigmaFn = std::function<Scalar(const Scalar& a, const RowParams&)>;
using BoundaryFn = std::function<Scalar(const Scalar& x, const Scalar& y, const Scalar& z,
                                        const Scalar& a, const RowParams&)>;
using FoldFn =
    std::function<Scalar(const Scalar& x, const Scalar& u, const Scalar& a, const RowParams&)>;

/// Static description of one boundary triple (q, sigma, k).
struct BoundaryRow {
  std::string id;
  std::string family;
  bool asterisk = false;
  bool trivial = false;
  SigmaFn sigma;
  BoundaryFn q;
  FoldFn k;                  // empty when no k is known
  bool k_uses_x = false;
  bool linear_xz = true;     // false for Moebius-in-z candidates
};

enum class BoundarySlot { X, Z };

/// A boundary equation q(x,y,z;a)=0 with its involution sigma and folding
/// function k, bound to a value of the free parameter mu.
class BoundaryEquation {
 public:
  BoundaryEquation(BoundaryRow row, BulkEquation bulk, Scalar mu);

  const std::string& id() const { return row_.id; }
  const std::string& source() const { return row_.id; }
  const BulkEquation& bulk() const { return bulk_; }
  const Scalar& mu() const { return params_.mu; }
  bool asterisk() const { return row_.asterisk; }
  bool trivial() const { return row_.trivial; }
  bool has_k() const { return static_cast<bool>(row_.k); }
  bool k_uses_x() const { return row_.k_uses_x; }
  bool linear_xz() const { return row_.linear_xz; }
  const BoundaryRow& row() const { return row_; }

  Scalar sigma(const Scalar& a) const;
  Scalar q(const Scalar& x, const Scalar& y, const Scalar& z, const Scalar& a) const;
  Scalar k(const Scalar& x, const Scalar& u, const Scalar& a) const;

  /// Negative controls: sigma(a) + shift, and q + shift.
  BoundaryEquation with_sigma_shift(const Scalar& shift) const;
  BoundaryEquation with_q_shift(const Scalar& shift) const;

 private:
  BoundaryRow row_;
  BulkEquation bulk_;
  RowParams params_;
  Scalar sigma_shift_;
  Scalar q_shift_;
};

/// Row ids for a family id (all families when empty), trivial rows included.
std::vector<std::string> boundary_ids(std::string_view family = {});
const BoundaryRow& boundary_row(std::string_view id);
BoundaryEquation boundary_equation(std::string_view id, const Scalar& mu,
                                   EllipticModulus modulus = {});
/// The row id prefix, e.g. "Q1d0" for "Q1d0.b3".
std::string family_of(std::string_view row_id);

Scalar eval_boundary(const BoundaryEquation& beq, const Scalar& x, const Scalar& y,
                     const Scalar& z, const Scalar& a);

/// Root of q in slot x or z. `other` is the remaining one of x, z.
Scalar solve_boundary(const BoundaryEquation& beq, BoundarySlot which, const Scalar& other,
                      const Scalar& y, const Scalar& a);

enum class LegMode { Additive, Multiplicative };

struct ThreeLegForm {
  std::function<Scalar(const Scalar& x, const Scalar& u, const Scalar& a)> psi;
  std::function<Scalar(const Scalar& x, const Scalar& y, const Scalar& a, const Scalar& b)> phi;
  LegMode mode = LegMode::Additive;
};

/// Only Q1d0 has catalogued legs; other families throw DomainError.
ThreeLegForm three_leg_form(const BulkEquation& eq);

}  // namespace qgb
