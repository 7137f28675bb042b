#include "qgb/elliptic.hpp"

#include <array>
#include <cmath>

#include "qgb/errors.hpp"

namespace qgb {

JacobiTriple jacobi(double u, double k) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("elliptic modulus must lie in [0, 1)");
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};

  constexpr int kMaxLevels = 16;
  std::array<double, kMaxLevels + 1> a{}, c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - k * k);
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > 1e-17 && n < kMaxLevels) {
    double an = a[n];
    a[n + 1] = 0.5 * (an + b);
    c[n + 1] = 0.5 * (an - b);
    b = std::sqrt(an * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  double prev = phi;
  for (int i = n; i > 0; --i) {
    prev = phi;
    phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  }
  double s = std::sin(phi);
  double cphi = std::cos(phi);
  return {s, cphi, cphi / std::cos(prev - phi)};
}

double jacobi_sn(double u, double k) { return jacobi(u, k).sn; }

}  // namespace qgb
