#include "qgb/zerocurv.hpp"

namespace qgb {

Moebius2 moebius_of_k(const BoundaryEquation& beq, const Scalar& x, const Scalar& a) {
  if (!beq.has_k()) throw UnsupportedK("row " + beq.id() + " has no folding function");
  return moebius_fit([&](const Scalar& u) { return beq.k(x, u, a); }, beq.bulk().mode());
}

Moebius2 build_L(const BulkEquation& eq, const Scalar& y, const Scalar& x, const Scalar& a,
                 const Scalar& b) {
  const FieldMode mode = eq.mode();
  const Scalar zero = Scalar::zero(mode), one = Scalar::from_int(1, mode);
  auto f = [&](const Scalar& v, const Scalar& w) { return eq.eval(x, y, v, w, a, b); };
  Scalar f00 = f(zero, zero), f01 = f(zero, one), f10 = f(one, zero), f11 = f(one, one);
  Scalar c00 = f00;
  Scalar c01 = f01 - f00;  // coefficient of u11
  Scalar c10 = f10 - f00;  // coefficient of u01
  Scalar c11 = f11 - f10 - f01 + f00;
  Moebius2 L{-c10, -c00, c11, c01};
  Scalar det = L.det();
  if (det.is_zero() ||
      (!det.exact() && det.magnitude() <= 1e-14 * (c00.magnitude() * c11.magnitude() +
                                                    c01.magnitude() * c10.magnitude()))) {
    throw SingularL("L is rank deficient");
  }
  return L;
}

namespace {

Moebius2 maybe_rescale(const Moebius2& m, Sampler& s, bool on) {
  if (!on) return m;
  Scalar f = m.mode() == FieldMode::ExactRational ? s.rational() : s.parameter(m.mode());
  return m.scaled(f);
}

void projective_outcome(const Moebius2& lhs, const Moebius2& rhs, SampleOutcome& out) {
  out.residual = projective_residual(lhs, rhs);
  out.ok = proportional(lhs, rhs);
}

Json matrix_json(const Moebius2& m) {
  return Json::array({Json::array({m.a.to_string(), m.b.to_string()}),
                      Json::array({m.c.to_string(), m.d.to_string()})});
}

}  // namespace

ZcrReport check_zcr_bulk(const BulkEquation& eq, int samples, std::uint64_t seed,
                         const ZcrOptions& options) {
  ZcrReport rep;
  rep.check = "zcr-bulk";
  rep.subjects = {eq.id()};
  if (options.off_locus) rep.details["off_locus"] = true;
  if (options.rescale) rep.details["rescaled"] = true;
  const FieldMode mode = eq.mode();
  run_samples(rep, samples, seed, [&](Sampler& s) {
    Scalar u00 = s.field(mode), u10 = s.field(mode), u01 = s.field(mode);
    Scalar a = s.parameter(mode), b = s.parameter(mode), lam = s.parameter(mode);
    Scalar u11 = solve_vertex(eq, Corner::U11, {u00, u10, u01, u00}, a, b);
    if (options.off_locus) u11 = u11 + 1;
    const bool r = options.rescale;
    Moebius2 lhs = maybe_rescale(build_L(eq, u11, u10, b, lam), s, r) *
                   maybe_rescale(build_L(eq, u10, u00, a, lam), s, r);
    Moebius2 rhs = maybe_rescale(build_L(eq, u11, u01, a, lam), s, r) *
                   maybe_rescale(build_L(eq, u01, u00, b, lam), s, r);
    SampleOutcome out;
    projective_outcome(lhs, rhs, out);
    if (!out.ok) {
      out.trace = {{"u00", u00.to_string()}, {"u10", u10.to_string()}, {"u01", u01.to_string()},
                   {"u11", u11.to_string()}, {"a", a.to_string()},     {"b", b.to_string()},
                   {"lambda", lam.to_string()}, {"lhs", matrix_json(lhs)}, {"rhs", matrix_json(rhs)}};
    }
    return out;
  });
  return rep;
}

ZcrReport check_zcr_boundary(const BulkEquation& eq, const BoundaryEquation& beq, int samples,
                             std::uint64_t seed, const ZcrOptions& options) {
  ZcrReport rep;
  rep.check = "zcr-boundary";
  rep.subjects = {eq.id(), beq.id()};
  rep.details["mu"] = beq.mu().to_string();
  if (options.off_locus) rep.details["off_locus"] = true;
  if (options.rescale) rep.details["rescaled"] = true;
  const FieldMode mode = eq.mode();
  run_samples(rep, samples, seed, [&](Sampler& s) {
    Scalar x = s.field(mode), y = s.field(mode);
    Scalar a = s.parameter(mode), c = s.parameter(mode);
    Scalar z = solve_boundary(beq, BoundarySlot::Z, x, y, a);
    if (options.off_locus) z = z + 1;
    Scalar sa = beq.sigma(a), sc = beq.sigma(c);
    const bool r = options.rescale;
    Moebius2 kz = maybe_rescale(moebius_of_k(beq, z, c), s, r);
    Moebius2 kx = maybe_rescale(moebius_of_k(beq, x, c), s, r);
    Moebius2 lhs = kz * maybe_rescale(build_L(eq, z, y, sa, c), s, r) *
                   maybe_rescale(build_L(eq, y, x, a, c), s, r);
    Moebius2 rhs = maybe_rescale(build_L(eq, z, y, sa, sc), s, r) *
                   maybe_rescale(build_L(eq, y, x, a, sc), s, r) * kx;
    SampleOutcome out;
    projective_outcome(lhs, rhs, out);
    if (!out.ok) {
      out.trace = {{"x", x.to_string()}, {"y", y.to_string()}, {"z", z.to_string()},
                   {"a", a.to_string()}, {"c", c.to_string()}, {"lhs", matrix_json(lhs)},
                   {"rhs", matrix_json(rhs)}};
    }
    return out;
  });
  return rep;
}

Moebius2 hk_H(int m, const Scalar& lambda, const Scalar& a, const Scalar& b, const Scalar& gamma) {
  const int sign = (m % 2 == 0) ? 1 : -1;
  Scalar t = 2 * lambda + 1;
  return {gamma, sign * t * a, sign * t * b, gamma};
}

HkReport check_fusion_hk(const Scalar& mu, int samples, std::uint64_t seed) {
  const BulkEquation q1 = bulk_equation("Q1d0");
  const BoundaryEquation row = boundary_equation("Q1d0.b3", mu);
  const FieldMode mode = FieldMode::ExactRational;
  HkReport rep;

  rep.fusion.check = "fusion";
  rep.fusion.subjects = {"Q1d0", "Q1d0.b3"};
  rep.fusion.details["mu"] = mu.to_string();
  run_samples(rep.fusion, samples, seed, [&](Sampler& s) {
    Scalar qm1 = s.field(mode), xm = s.field(mode), xm1 = s.field(mode);
    Scalar a = s.parameter(mode), c = s.parameter(mode);
    Scalar sa = row.sigma(a);
    auto legs = three_leg_form(q1);
    // psi(q1, x_{m+1}; s(a)) - psi(q1, x_m; a) = phi(q1, q0; s(a), a), solved for q0
    Scalar lhs_leg = legs.psi(qm1, xm1, sa) - legs.psi(qm1, xm, a);
    Scalar q0 = qm1 - (sa - a) / lhs_leg;
    Scalar quad = q1.eval(qm1, xm, xm1, q0, a, sa);
    Moebius2 prod = build_L(q1, xm1, qm1, sa, c) * build_L(q1, qm1, xm, a, c);
    Moebius2 fused = build_L(q1, q0, qm1, sa - a, c - a);
    // exact statement with L normalised by 1/(x - y)
    Scalar norm = (qm1 - xm1) * (xm - qm1);
    Moebius2 exact_lhs = prod.scaled(1 / norm);
    Moebius2 exact_rhs = fused.scaled(c / (qm1 - q0));
    SampleOutcome out;
    out.residual = projective_residual(prod, fused);
    out.ok = quad.is_zero() && proportional(prod, fused) && exact_lhs == exact_rhs;
    if (!out.ok) {
      out.trace = {{"q1", qm1.to_string()}, {"x_m", xm.to_string()}, {"x_m+1", xm1.to_string()},
                   {"q0", q0.to_string()},  {"a", a.to_string()},    {"c", c.to_string()},
                   {"quad_residual", quad.to_string()}};
    }
    return out;
  });

  rep.k_to_h.check = "k-to-h";
  rep.k_to_h.subjects = {"Q1d0", "Q1d0.b3"};
  // The HK parameters (a, b, gamma, lambda) fix x0 = sqrt(a/b), mu = gamma sqrt(b/a) and the
  // lattice parameter; a = s^2 b keeps the square roots rational.
  run_samples(rep.k_to_h, samples, seed ^ 0x5bd1e995ULL, [&](Sampler& s) {
    Scalar sq = s.rational(), b = s.rational(), gamma = s.rational(), lam = s.rational();
    int m = s.integer(0, 7);
    Scalar a = sq * sq * b;
    Scalar mu_hk = gamma / sq;
    Scalar x0 = sq;
    Scalar xm = (m % 2 == 0) ? x0 : -x0;
    Scalar c = (2 * lam + 1) * b + mu_hk;
    BoundaryEquation r3 = boundary_equation("Q1d0.b3", mu_hk);
    Moebius2 k_closed{mu_hk * xm, (c - mu_hk) * xm * xm, c - mu_hk, mu_hk * xm};
    Moebius2 k_fit = moebius_of_k(r3, xm, c);
    Moebius2 h = hk_H(m, lam, a, b, gamma);
    Moebius2 signed_h = (m % 2 == 0) ? h : h.scaled(Scalar(-1));
    // fused boundary relation at the boundary cell, x_{m+1} = -x_m
    Scalar lat_a = b + mu_hk;
    Scalar sa = r3.sigma(lat_a), sc = r3.sigma(c);
    Scalar qm1 = s.rational();
    Scalar xm1 = -xm;
    Scalar lhs_leg = sa / (qm1 - xm1) - lat_a / (qm1 - xm);
    Scalar q0 = qm1 - (sa - lat_a) / lhs_leg;
    Moebius2 kx1 = moebius_of_k(r3, xm1, c);
    Moebius2 fz_c = build_L(q1, q0, qm1, sa - lat_a, c - lat_a);
    Moebius2 fz_sc = build_L(q1, q0, qm1, sa - lat_a, sc - lat_a);
    bool fused_zcr = proportional(kx1 * fz_c, fz_sc * k_fit);
    SampleOutcome out;
    out.residual = discrepancy(k_closed.a, signed_h.a);
    out.ok = k_closed == signed_h && proportional(k_fit, signed_h) && fused_zcr;
    if (!out.ok) {
      out.trace = {{"m", m}, {"lambda", lam.to_string()}, {"gamma", gamma.to_string()},
                   {"b", b.to_string()}, {"sqrt_a_over_b", sq.to_string()},
                   {"fused_zcr", fused_zcr}};
    }
    return out;
  });

  rep.spectral.check = "spectral-map";
  rep.spectral.subjects = {"Q1d0", "Q1d0.b3"};
  run_samples(rep.spectral, samples, seed ^ 0x27d4eb2fULL, [&](Sampler& s) {
    Scalar b = s.rational(), gamma = s.rational(), lam = s.rational(), sq = s.rational();
    Scalar mu_hk = gamma / sq;
    BoundaryEquation r3 = boundary_equation("Q1d0.b3", mu_hk);
    Scalar c = (2 * lam + 1) * b + mu_hk;
    Scalar sc = r3.sigma(c);
    Scalar image = ((sc - mu_hk) / b - 1) / 2;
    Scalar expected = -lam - 1;
    SampleOutcome out;
    out.residual = discrepancy(image, expected);
    out.ok = image == expected;
    if (!out.ok) out.trace = {{"lambda", lam.to_string()}, {"image", image.to_string()}};
    return out;
  });
  rep.spectral.details["h"] = "-lambda-1";
  return rep;
}

}  // namespace qgb
