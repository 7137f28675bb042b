#pragma once

namespace qgb {

struct EllipticModulus {
  double k = 0.6;
};

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// sn, cn, dn for real argument and modulus k in [0, 1), by descending
/// Landen (arithmetic-geometric mean) transformation.
JacobiTriple jacobi(double u, double k);

double jacobi_sn(double u, double k);

}  // namespace qgb
