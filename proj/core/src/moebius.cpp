#include "qgb/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qgb/errors.hpp"

namespace qgb {

Moebius2 Moebius2::identity(FieldMode mode) {
  return {Scalar::from_int(1, mode), Scalar::zero(mode), Scalar::zero(mode),
          Scalar::from_int(1, mode)};
}

Scalar Moebius2::act(const Scalar& u) const { return (a * u + b) / (c * u + d); }

Moebius2 operator*(const Moebius2& m, const Moebius2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
          m.c * n.b + m.d * n.d};
}

Scalar projective_residual(const Moebius2& m, const Moebius2& n, const Tolerance& tol) {
  auto e = m.entries();
  auto f = n.entries();
  if (m.mode() == FieldMode::ExactRational) {
    Residual worst;
    worst.observe(Scalar(0));
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        worst.observe(discrepancy(e[i] * f[j], e[j] * f[i]));
      }
    }
    return worst.value();
  }
  // best s minimising |f - s e|: s = <e, f> / <e, e>
  std::complex<double> num = 0.0, den = 0.0;
  double fnorm = 0.0;
  for (int i = 0; i < 4; ++i) {
    num += std::conj(e[i].complex()) * f[i].complex();
    den += std::norm(e[i].complex());
    fnorm += std::norm(f[i].complex());
  }
  if (den.real() == 0.0 || fnorm == 0.0) return Scalar::real(den.real() == fnorm ? 0.0 : 1.0);
  std::complex<double> s = num / den;
  double res = 0.0;
  for (int i = 0; i < 4; ++i) res += std::norm(f[i].complex() - s * e[i].complex());
  return Scalar::real(std::sqrt(res) / std::max(std::sqrt(fnorm), tol.floor));
}

bool proportional(const Moebius2& m, const Moebius2& n, const Tolerance& tol) {
  Scalar r = projective_residual(m, n, tol);
  if (r.exact()) return r.is_zero();
  return r.magnitude() < tol.relative;
}

namespace {

// Null vector of a 3x4 system by Gaussian elimination with pivoting on magnitude.
std::array<Scalar, 4> null_vector(std::vector<std::array<Scalar, 4>> m, FieldMode mode) {
  std::array<int, 4> pivot_col{-1, -1, -1, -1};
  int row = 0;
  std::vector<int> pivots;
  for (int col = 0; col < 4 && row < 3; ++col) {
    int best = -1;
    double best_mag = 0.0;
    for (int r = row; r < 3; ++r) {
      if (m[r][col].is_zero()) continue;
      double mag = m[r][col].magnitude();
      if (best < 0 || (mode == FieldMode::ComplexF64 && mag > best_mag)) {
        best = r;
        best_mag = mag;
      }
    }
    if (best < 0) continue;
    std::swap(m[row], m[best]);
    Scalar p = m[row][col];
    for (auto& v : m[row]) v = v / p;
    for (int r = 0; r < 3; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Scalar f = m[r][col];
      for (int c = 0; c < 4; ++c) m[r][c] = m[r][c] - f * m[row][c];
    }
    pivot_col[row] = col;
    pivots.push_back(col);
    ++row;
  }
  int free_col = -1;
  for (int c = 0; c < 4; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) {
      free_col = c;
      break;
    }
  }
  std::array<Scalar, 4> v{Scalar::zero(mode), Scalar::zero(mode), Scalar::zero(mode),
                          Scalar::zero(mode)};
  v[free_col] = Scalar::from_int(1, mode);
  for (int r = 0; r < row; ++r) v[pivot_col[r]] = -m[r][free_col];
  return v;
}

}  // namespace

Moebius2 moebius_fit(const std::function<Scalar(const Scalar&)>& f, FieldMode mode,
                     const Tolerance& tol) {
  static const long kPoints[][2] = {{0, 1}, {1, 1}, {-1, 1}, {2, 1},  {-2, 1}, {1, 2},
                                    {3, 1}, {-1, 3}, {5, 2}, {-7, 3}, {11, 5}, {13, 7}};
  std::vector<std::pair<Scalar, Scalar>> samples;
  for (const auto& p : kPoints) {
    Scalar u = mode == FieldMode::ExactRational
                   ? Scalar::fraction(p[0], p[1])
                   : Scalar::real(static_cast<double>(p[0]) / static_cast<double>(p[1]));
    try {
      samples.emplace_back(u, f(u));
    } catch (const DivisionByZero&) {
      continue;
    }
    if (samples.size() == 5) break;
  }
  if (samples.size() < 5) throw SingularSample("function has too many poles to interpolate");
  std::vector<std::array<Scalar, 4>> rows;
  for (int i = 0; i < 3; ++i) {
    const auto& [u, v] = samples[i];
    rows.push_back({u, Scalar::from_int(1, mode), -(v * u), -v});
  }
  auto n = null_vector(rows, mode);
  Moebius2 m{n[0], n[1], n[2], n[3]};
  for (std::size_t i = 3; i < samples.size(); ++i) {
    const auto& [u, v] = samples[i];
    // cross-multiplied form avoids dividing at a pole of the fit
    if (!agree(m.a * u + m.b, v * (m.c * u + m.d), tol)) {
      throw UnsupportedK("function is not a Moebius map of its argument");
    }
  }
  return m;
}

Scalar moebius_root(const Moebius2& m, const Tolerance& tol) {
  if (m.a.is_zero() || (!m.a.exact() && m.a.magnitude() <= tol.floor)) {
    throw SingularSolve("Moebius numerator has no root");
  }
  Scalar z = -(m.b / m.a);
  Scalar den = m.c * z + m.d;
  if (den.is_zero()) throw SingularSolve("root coincides with a pole");
  return z;
}

}  // namespace qgb
