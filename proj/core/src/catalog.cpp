#include "qgb/catalog.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "qgb/errors.hpp"
#include "qgb/moebius.hpp"

namespace qgb {

namespace {

using S = Scalar;

S sn_of(const S& a, double k) { return S::real(jacobi_sn(a.to_double(), k)); }

void require_mode(FieldMode mode, std::initializer_list<const S*> values) {
  for (const S* v : values) {
    if (v->mode() != mode) throw ModeError("scalar mode does not match the equation");
  }
}

}  // namespace

BulkEquation::BulkEquation(Family family, int delta, EllipticModulus modulus)
    : family_(family), delta_(delta), modulus_(modulus) {
  if (delta != 0 && delta != 1) throw DomainError("delta must be 0 or 1");
  if (family == Family::Q4 && !(modulus.k > 0.0 && modulus.k < 1.0)) {
    throw DomainError("Q4 modulus must lie in (0, 1)");
  }
  offset_ = S::zero(mode());
}

std::string BulkEquation::id() const {
  switch (family_) {
    case Family::Q1: return delta_ ? "Q1d1" : "Q1d0";
    case Family::Q2: return "Q2";
    case Family::Q3: return delta_ ? "Q3d1" : "Q3d0";
    case Family::Q4: return "Q4";
    case Family::H1: return "H1";
    case Family::H2: return "H2";
    case Family::H3: return delta_ ? "H3d1" : "H3d0";
    case Family::A1: return delta_ ? "A1d1" : "A1d0";
    case Family::A2: return "A2";
  }
  return "?";
}

BulkEquation BulkEquation::with_offset(const Scalar& offset) const {
  BulkEquation e = *this;
  e.offset_ = offset;
  return e;
}

Scalar BulkEquation::eval(const S& u00, const S& u10, const S& u01, const S& u11, const S& a,
                          const S& b) const {
  require_mode(mode(), {&u00, &u10, &u01, &u11, &a, &b});
  const int d2 = delta_ * delta_;
  S r;
  switch (family_) {
    case Family::Q1:
      r = a * (u00 - u01) * (u10 - u11) - b * (u00 - u10) * (u01 - u11) + d2 * a * b * (a - b);
      break;
    case Family::Q2:
      r = a * (u00 - u01) * (u10 - u11) - b * (u00 - u10) * (u01 - u11) +
          a * b * (a - b) * (u00 + u10 + u01 + u11) - a * b * (a - b) * (a * a - a * b + b * b);
      break;
    case Family::Q3:
      r = (b * b - a * a) * (u00 * u11 + u10 * u01) + b * (a * a - 1) * (u00 * u10 + u01 * u11) -
          a * (b * b - 1) * (u00 * u01 + u10 * u11);
      if (d2) r -= (a * a - b * b) * (a * a - 1) * (b * b - 1) / (4 * a * b);
      break;
    case Family::Q4: {
      const double k = modulus_.k;
      S sa = sn_of(a, k), sb = sn_of(b, k), sab = sn_of(a - b, k), k2 = S::real(k * k);
      r = sa * (u00 * u10 + u01 * u11) - sb * (u00 * u01 + u10 * u11) -
          sab * (u00 * u11 + u10 * u01) + sab * sa * sb * (1 + k2 * u00 * u10 * u01 * u11);
      break;
    }
    case Family::H1:
      r = (u00 - u11) * (u10 - u01) + b - a;
      break;
    case Family::H2:
      r = (u00 - u11) * (u10 - u01) + (b - a) * (u00 + u10 + u01 + u11) + b * b - a * a;
      break;
    case Family::H3:
      r = a * (u00 * u10 + u01 * u11) - b * (u00 * u01 + u10 * u11) + d2 * (a * a - b * b);
      break;
    case Family::A1:
      r = a * (u00 + u01) * (u10 + u11) - b * (u00 + u10) * (u01 + u11) - d2 * a * b * (a - b);
      break;
    case Family::A2:
      r = b * (a * a - 1) * (u00 * u01 + u10 * u11) - a * (b * b - 1) * (u00 * u10 + u01 * u11) +
          (b * b - a * a) * (u00 * u10 * u01 * u11 + 1);
      break;
  }
  return r + offset_;
}

const std::vector<std::string>& bulk_ids() {
  static const std::vector<std::string> ids = {"Q1d0", "Q1d1", "Q2",   "Q3d0", "Q3d1",
                                               "Q4",   "H1",   "H2",   "H3d0", "H3d1",
                                               "A1d0", "A1d1", "A2"};
  return ids;
}

BulkEquation bulk_equation(std::string_view id, EllipticModulus modulus) {
  static const std::map<std::string, std::pair<Family, int>, std::less<>> table = {
      {"Q1d0", {Family::Q1, 0}}, {"Q1d1", {Family::Q1, 1}}, {"Q2", {Family::Q2, 0}},
      {"Q3d0", {Family::Q3, 0}}, {"Q3d1", {Family::Q3, 1}}, {"Q4", {Family::Q4, 0}},
      {"H1", {Family::H1, 0}},   {"H2", {Family::H2, 0}},   {"H3d0", {Family::H3, 0}},
      {"H3d1", {Family::H3, 1}}, {"A1d0", {Family::A1, 0}}, {"A1d1", {Family::A1, 1}},
      {"A2", {Family::A2, 0}}};
  auto it = table.find(id);
  if (it == table.end()) throw UnknownId("unknown bulk equation '" + std::string(id) + "'");
  return BulkEquation(it->second.first, it->second.second, modulus);
}

Scalar eval_bulk(const BulkEquation& eq, const S& u00, const S& u10, const S& u01, const S& u11,
                 const S& a, const S& b) {
  return eq.eval(u00, u10, u01, u11, a, b);
}

Scalar affine_root(const std::function<Scalar(const Scalar&)>& f, FieldMode mode) {
  S f0 = f(S::zero(mode));
  S f1 = f(S::from_int(1, mode));
  S slope = f1 - f0;
  if (slope.is_zero()) throw SingularSolve("linear coefficient vanishes");
  if (!slope.exact() && slope.magnitude() <= 1e-13 * std::max(f0.magnitude(), f1.magnitude())) {
    throw SingularSolve("linear coefficient vanishes to rounding");
  }
  return -(f0 / slope);
}

Scalar solve_vertex(const BulkEquation& eq, Corner which, std::array<Scalar, 4> u, const S& a,
                    const S& b) {
  const auto slot = static_cast<std::size_t>(which);
  return affine_root(
      [&](const S& t) {
        u[slot] = t;
        return eq.eval(u[0], u[1], u[2], u[3], a, b);
      },
      eq.mode());
}

// ---------------------------------------------------------------------------
// boundary rows

BoundaryEquation::BoundaryEquation(BoundaryRow row, BulkEquation bulk, Scalar mu)
    : row_(std::move(row)), bulk_(std::move(bulk)) {
  params_.mu = std::move(mu);
  params_.modulus = bulk_.modulus().k;
  sigma_shift_ = S::zero(params_.mu.mode());
  q_shift_ = S::zero(params_.mu.mode());
}

namespace {
// Shifts are stored exactly and follow the mode of the value they perturb.
S plus_shift(const S& value, const S& shift) {
  if (shift.is_zero()) return value;
  return value + (value.mode() == shift.mode() ? shift : S::real(shift.to_double()));
}
}  // namespace

Scalar BoundaryEquation::sigma(const Scalar& a) const {
  return plus_shift(row_.sigma(a, params_), sigma_shift_);
}

Scalar BoundaryEquation::q(const S& x, const S& y, const S& z, const S& a) const {
  return plus_shift(row_.q(x, y, z, a, params_), q_shift_);
}

Scalar BoundaryEquation::k(const S& x, const S& u, const S& a) const {
  if (!row_.k) throw UnsupportedK("row " + row_.id + " has no folding function");
  return row_.k(x, u, a, params_);
}

BoundaryEquation BoundaryEquation::with_sigma_shift(const Scalar& shift) const {
  BoundaryEquation e = *this;
  e.sigma_shift_ = shift;
  return e;
}

BoundaryEquation BoundaryEquation::with_q_shift(const Scalar& shift) const {
  BoundaryEquation e = *this;
  e.q_shift_ = shift;
  return e;
}

namespace {

SigmaFn sigma_mu2_over_a() {
  return [](const S& a, const RowParams& p) { return p.mu * p.mu / a; };
}
SigmaFn sigma_2mu_minus_a() {
  return [](const S& a, const RowParams& p) { return -a + 2 * p.mu; };
}
SigmaFn sigma_mu_minus_a() {
  return [](const S& a, const RowParams& p) { return -a + p.mu; };
}
SigmaFn sigma_mu_over_a(int s) {
  return [s](const S& a, const RowParams& p) { return s * p.mu / a; };
}
SigmaFn sigma_neg() {
  return [](const S& a, const RowParams&) { return -a; };
}
SigmaFn sigma_id() {
  return [](const S& a, const RowParams&) { return a; };
}
FoldFn k_plus_u() {
  return [](const S&, const S& u, const S&, const RowParams&) { return u; };
}
FoldFn k_minus_u() {
  return [](const S&, const S& u, const S&, const RowParams&) { return -u; };
}
FoldFn k_signed_u(int s) {
  return [s](const S&, const S& u, const S&, const RowParams&) { return s * u; };
}
BoundaryFn q_y_x_plus_sz(int s) {
  return [s](const S& x, const S& y, const S& z, const S&, const RowParams&) {
    return y * (x + s * z);
  };
}

std::string sign_id(const std::string& base, int s) { return base + (s > 0 ? "+" : "-"); }

void add(std::vector<BoundaryRow>& rows, BoundaryRow r) { rows.push_back(std::move(r)); }

std::vector<BoundaryRow> build_rows() {
  std::vector<BoundaryRow> rows;

  // Q1, delta = 0
  add(rows, {"Q1d0.b1", "Q1d0", true, false, sigma_mu2_over_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return a * (y - z) + p.mu * (x - y);
             },
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return x + p.mu / a * (x - u);
             },
             true});
  add(rows, {"Q1d0.b2", "Q1d0", true, false, sigma_mu2_over_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return a * x * (y - z) + p.mu * z * (y - x);
             },
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return a * x * u / (a * u + p.mu * (x - u));
             },
             true});
  add(rows, {"Q1d0.b3", "Q1d0", true, false, sigma_2mu_minus_a(), q_y_x_plus_sz(1),
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return (p.mu * x * u + (a - p.mu) * x * x) / ((a - p.mu) * u + p.mu * x);
             },
             true});
  add(rows, {"Q1d0.b4", "Q1d0", true, false, sigma_2mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return a * (y * y - x * z) + (x - y) * (y + z) * p.mu;
             },
             k_minus_u(), false});

  // Q1, delta = 1
  for (int s : {1, -1}) {
    add(rows, {sign_id("Q1d1.b1", s), "Q1d1", true, false, sigma_mu2_over_a(),
               [s](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
                 return a * (y - z - p.mu) + s * p.mu * (y - x - p.mu);
               },
               [s](const S& x, const S& u, const S& a, const RowParams& p) {
                 return x + p.mu + s * p.mu / a * (u - x - p.mu);
               },
               true});
  }
  add(rows, {"Q1d1.b2", "Q1d1", true, false, sigma_2mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S&, const RowParams&) {
               return y * (x - z);
             },
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return x + a * (a - 2 * p.mu) / (x - u);
             },
             true});
  add(rows, {"Q1d1.b3", "Q1d1", true, false, sigma_2mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return (y - x) * (y - z) + a * (a - 2 * p.mu);
             },
             k_plus_u(), false});
  add(rows, {"Q1d1.b4", "Q1d1", false, false, sigma_2mu_minus_a(), q_y_x_plus_sz(1),
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return (x * (a * x - p.mu * (x - u)) - a * (a - p.mu) * (a - 2 * p.mu)) /
                      (a * u + p.mu * (x - u));
             },
             true});
  add(rows, {"Q1d1.b5", "Q1d1", false, false, sigma_2mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return (y * y - x * z) + p.mu / a * (x - y) * (y + z) - (a - p.mu) * (a - 2 * p.mu);
             },
             k_minus_u(), false});

  // Q3, delta = 0
  for (int s : {1, -1}) {
    add(rows, {sign_id("Q3d0.b1", s), "Q3d0", true, false, sigma_mu_over_a(s), q_y_x_plus_sz(s),
               [s](const S& x, const S& u, const S& a, const RowParams& p) {
                 const S& m = p.mu;
                 return s * ((a * a - m) * x - a * (1 - m) * u) * x /
                        ((a * a - m) * u - a * (1 - m) * x);
               },
               true});
  }
  for (int s : {1, -1}) {
    add(rows, {sign_id("Q3d0.b2", s), "Q3d0", true, false, sigma_mu_over_a(s),
               [s](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
                 return (a * a + p.mu) * (y * y + s * x * z) - a * (1 + p.mu) * y * (x + s * z);
               },
               k_signed_u(s), false});
  }
  add(rows, {"Q3d0.b3", "Q3d0", false, false, sigma_neg(), q_y_x_plus_sz(1), k_plus_u(), false});

  // Q3, delta = 1
  for (int s : {1, -1}) {
    add(rows, {sign_id("Q3d1.b1", s), "Q3d1", false, false, sigma_mu_over_a(1), q_y_x_plus_sz(s),
               [s](const S& x, const S& u, const S& a, const RowParams& p) {
                 const S& m = p.mu;
                 S num = a * (m - s) * x * u - (m - s * a * a) * x * x +
                         (a * a - 1) * (a * a - m * m) * (1 / m - s / (a * a)) / 4;
                 return num / ((a * a - s * m) * u - a * (1 - s * m) * x);
               },
               true});
  }
  for (int s : {1, -1}) {
    add(rows, {sign_id("Q3d1.b2", s), "Q3d1", false, false, sigma_mu_over_a(1),
               [s](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
                 const S& m = p.mu;
                 return a * (m + s) * y * (x + s * z) - (m + s * a * a) * (y * y + s * x * z) +
                        (1 / m + s / (a * a)) * (a * a - 1) * (a * a - m * m) / 4;
               },
               k_signed_u(s), false});
  }
  add(rows, {"Q3d1.b3", "Q3d1", false, false, sigma_neg(), q_y_x_plus_sz(1), k_plus_u(), false});

  // Q4
  add(rows, {"Q4.b1", "Q4", false, false, sigma_neg(), q_y_x_plus_sz(1),
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               S sa = sn_of(a, p.modulus);
               S k2 = S::real(p.modulus * p.modulus);
               return (x * x - sa * sa) / (u * (1 - k2 * sa * sa * x * x));
             },
             true});
  add(rows, {"Q4.b2", "Q4", false, false, sigma_neg(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               S sa = sn_of(a, p.modulus);
               S k2 = S::real(p.modulus * p.modulus);
               return sa * sa * (k2 * y * y * x * z - 1) + y * y - x * z;
             },
             k_minus_u(), false});

  // H1
  add(rows, {"H1.b1", "H1", true, false, sigma_2mu_minus_a(), q_y_x_plus_sz(1),
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return u + (p.mu - a) / x;
             },
             true});
  add(rows, {"H1.b2", "H1", true, false, sigma_2mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return y * (z - x) + a - p.mu;
             },
             k_minus_u(), false});

  // H2
  add(rows, {"H2.b1", "H2", true, false, sigma_mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S&, const RowParams& p) {
               return x + 2 * y + z + p.mu;
             },
             k_plus_u(), false});
  add(rows, {"H2.b2", "H2", true, false, sigma_mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S&, const RowParams&) {
               return y * (z - x);
             },
             [](const S& x, const S& u, const S&, const RowParams& p) { return -2 * x - u - p.mu; },
             true});
  add(rows, {"H2.b3", "H2", false, false, sigma_mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return 2 * y * (x - z) + (p.mu - 2 * a) * (x + z + p.mu);
             },
             k_minus_u(), false});
  add(rows, {"H2.b4", "H2", false, false, sigma_mu_minus_a(), q_y_x_plus_sz(1),
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return (2 * u * x + (u + p.mu) * (p.mu - 2 * a)) / (2 * x + 2 * a - p.mu);
             },
             true});

  // H3, delta = 0
  add(rows, {"H3d0.b1", "H3d0", false, false, sigma_neg(), q_y_x_plus_sz(1), k_plus_u(), false});
  for (int s : {1, -1}) {
    add(rows, {sign_id("H3d0.b2", s), "H3d0", false, false, sigma_mu_over_a(1), q_y_x_plus_sz(s),
               k_signed_u(s), false});
  }

  // H3, delta = 1
  for (int s : {1, -1}) {
    add(rows, {sign_id("H3d1.b1", s), "H3d1", true, false, sigma_mu_over_a(1), q_y_x_plus_sz(s),
               [s](const S& x, const S& u, const S& a, const RowParams& p) {
                 return s * u - (p.mu - s * a * a) / (a * x);
               },
               true});
  }
  for (int s : {1, -1}) {
    add(rows, {sign_id("H3d1.b2", s), "H3d1", true, false, sigma_mu_over_a(1),
               [s](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
                 return a * a + a * y * (x + s * z) + s * p.mu;
               },
               k_signed_u(s), false});
  }
  add(rows, {"H3d1.b3", "H3d1", false, false, sigma_neg(), q_y_x_plus_sz(1), k_plus_u(), false});

  // A1, delta = 0
  add(rows, {"A1d0.b1", "A1d0", true, false, sigma_mu2_over_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return p.mu * (x + y) + a * (y + z);
             },
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return -x + p.mu / a * (u + x);
             },
             true});
  add(rows, {"A1d0.b2", "A1d0", true, false, sigma_mu2_over_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return a * x * (y + z) + (x + y) * z * p.mu;
             },
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return a * x * u / (p.mu * (u + x) - a * u);
             },
             true});
  add(rows, {"A1d0.b3", "A1d0", true, false, sigma_2mu_minus_a(), q_y_x_plus_sz(1),
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return (a * x - p.mu * (u + x)) * x / (a * u - p.mu * (u + x));
             },
             true});
  add(rows, {"A1d0.b4", "A1d0", true, false, sigma_2mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return a * (y * y - x * z) - (x + y) * (y - z) * p.mu;
             },
             k_minus_u(), false});

  // A1, delta = 1
  for (int s : {1, -1}) {
    add(rows, {sign_id("A1d1.b1", s), "A1d1", true, false, sigma_mu2_over_a(),
               [s](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
                 return a * (y + z - p.mu) + s * p.mu * (x + y - p.mu);
               },
               [s](const S& x, const S& u, const S& a, const RowParams& p) {
                 return -x + p.mu + s * p.mu / a * (x + u - p.mu);
               },
               true});
  }
  add(rows, {"A1d1.b2", "A1d1", true, false, sigma_2mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S&, const RowParams&) {
               return y * (z - x);
             },
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return -x - a * (a - 2 * p.mu) / (x + u);
             },
             true});
  add(rows, {"A1d1.b3", "A1d1", true, false, sigma_2mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return (x + y) * (y + z) + a * (a - 2 * p.mu);
             },
             k_plus_u(), false});
  add(rows, {"A1d1.b4", "A1d1", false, false, sigma_2mu_minus_a(), q_y_x_plus_sz(1),
             [](const S& x, const S& u, const S& a, const RowParams& p) {
               return (x * (a * x - p.mu * (x + u)) - a * (a - p.mu) * (a - 2 * p.mu)) /
                      (a * u - p.mu * (x + u));
             },
             true});
  add(rows, {"A1d1.b5", "A1d1", false, false, sigma_2mu_minus_a(),
             [](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
               return p.mu / a * (x + y) * (y - z) - (y * y - x * z) + (a - p.mu) * (a - 2 * p.mu);
             },
             k_minus_u(), false});

  // A2
  for (int s : {1, -1}) {
    add(rows, {sign_id("A2.b1", s), "A2", true, false, sigma_mu_over_a(s),
               [s](const S& x, const S& y, const S& z, const S&, const RowParams&) {
                 return y * (z + s * x);
               },
               [s](const S& x, const S& u, const S& a, const RowParams& p) {
                 const S& m = p.mu;
                 return s * (a * (m - 1) * u * x + a * a - m) /
                        (x * ((a * a - m) * x * u + a * (m - 1)));
               },
               true});
  }
  for (int s : {1, -1}) {
    add(rows, {sign_id("A2.b2", s), "A2", true, false, sigma_mu_over_a(s),
               [s](const S& x, const S& y, const S& z, const S& a, const RowParams& p) {
                 return a * (1 + p.mu) * y * (x + s * z) - (a * a + p.mu) * (1 + s * x * y * y * z);
               },
               k_signed_u(s), false});
  }
  add(rows, {"A2.b3", "A2", false, false, sigma_neg(),
             [](const S& x, const S& y, const S& z, const S&, const RowParams&) {
               return y * (z + x);
             },
             k_plus_u(), false});

  // trivial solution for every family: sigma = id, k = -u
  for (const auto& fam : bulk_ids()) {
    add(rows, {fam + ".trivial", fam, false, true, sigma_id(),
               [](const S& x, const S& y, const S& z, const S& a, const RowParams&) {
                 return a * y * (x - z);
               },
               k_minus_u(), false});
  }
  return rows;
}

const std::vector<BoundaryRow>& all_rows() {
  static const std::vector<BoundaryRow> rows = build_rows();
  return rows;
}

}  // namespace

std::string family_of(std::string_view row_id) {
  auto dot = row_id.find('.');
  return std::string(row_id.substr(0, dot));
}

std::vector<std::string> boundary_ids(std::string_view family) {
  std::vector<std::string> out;
  if (!family.empty()) {
    const auto& ids = bulk_ids();
    if (std::find(ids.begin(), ids.end(), family) == ids.end()) {
      throw UnknownId("unknown family '" + std::string(family) + "'");
    }
  }
  // table rows first, in family order, then trivial rows
  for (const auto& fam : bulk_ids()) {
    if (!family.empty() && fam != family) continue;
    for (const auto& r : all_rows()) {
      if (r.family == fam && !r.trivial) out.push_back(r.id);
    }
    out.push_back(fam + ".trivial");
  }
  return out;
}

const BoundaryRow& boundary_row(std::string_view id) {
  for (const auto& r : all_rows()) {
    if (r.id == id) return r;
  }
  throw UnknownId("unknown boundary row '" + std::string(id) + "'");
}

BoundaryEquation boundary_equation(std::string_view id, const Scalar& mu,
                                   EllipticModulus modulus) {
  const BoundaryRow& row = boundary_row(id);
  BulkEquation bulk = bulk_equation(row.family, modulus);
  Scalar m = mu;
  if (bulk.mode() == FieldMode::ComplexF64 && m.exact()) m = Scalar::real(m.to_double());
  if (bulk.mode() == FieldMode::ExactRational && !m.exact()) {
    throw ModeError("exact family needs an exact mu");
  }
  return BoundaryEquation(row, bulk, m);
}

Scalar eval_boundary(const BoundaryEquation& beq, const S& x, const S& y, const S& z, const S& a) {
  return beq.q(x, y, z, a);
}

Scalar solve_boundary(const BoundaryEquation& beq, BoundarySlot which, const S& other, const S& y,
                      const S& a) {
  auto f = [&](const S& t) {
    return which == BoundarySlot::Z ? beq.q(other, y, t, a) : beq.q(t, y, other, a);
  };
  if (beq.linear_xz()) return affine_root(f, beq.bulk().mode());
  Moebius2 m;
  try {
    m = moebius_fit(f, beq.bulk().mode());
  } catch (const UnsupportedK&) {
    throw SingularSolve("boundary equation is degenerate in the requested slot");
  }
  return moebius_root(m);
}

ThreeLegForm three_leg_form(const BulkEquation& eq) {
  if (eq.family() != Family::Q1 || eq.delta() != 0) {
    throw DomainError("three-leg form is only catalogued for Q1d0");
  }
  ThreeLegForm t;
  t.psi = [](const S& x, const S& u, const S& a) { return a / (x - u); };
  t.phi = [](const S& x, const S& y, const S& a, const S& b) { return (a - b) / (x - y); };
  t.mode = LegMode::Additive;
  return t;
}

}  // namespace qgb
