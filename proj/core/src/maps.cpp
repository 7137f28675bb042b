#include "qgb/maps.hpp"

#include <array>

#include "qgb/consistency.hpp"
#include "qgb/moebius.hpp"
#include "qgb/sampling.hpp"

namespace qgb {

std::string to_string(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::Diff: return "s-t";
    case InvariantKind::Sum: return "s+t";
    case InvariantKind::Ratio: return "s/t";
    case InvariantKind::Product: return "st";
    case InvariantKind::RecipDiff: return "1/s-1/t";
    case InvariantKind::RecipSum: return "1/s+1/t";
  }
  return "?";
}

std::string to_string(FlowKind flow) {
  switch (flow) {
    case FlowKind::Shift: return "1";
    case FlowKind::AltShift: return "(-1)^(k+l)";
    case FlowKind::Scale: return "u";
    case FlowKind::AltScale: return "(-1)^(k+l) u";
    case FlowKind::Square: return "u^2";
    case FlowKind::AltSquare: return "(-1)^(k+l) u^2";
  }
  return "?";
}

std::string to_string(Normalization n) {
  switch (n) {
    case Normalization::Identity: return "identity";
    case Normalization::ScaleByParam: return "X->aX";
    case Normalization::Negate: return "X->-X";
  }
  return "?";
}

Scalar InvariantMap::operator()(const Scalar& s, const Scalar& t) const {
  switch (kind) {
    case InvariantKind::Diff: return s - t;
    case InvariantKind::Sum: return s + t;
    case InvariantKind::Ratio: return s / t;
    case InvariantKind::Product: return s * t;
    case InvariantKind::RecipDiff: return 1 / s - 1 / t;
    case InvariantKind::RecipSum: return 1 / s + 1 / t;
  }
  throw DomainError("bad invariant kind");
}

Scalar InvariantMap::solve_t(const Scalar& s, const Scalar& X) const {
  switch (kind) {
    case InvariantKind::Diff: return s - X;
    case InvariantKind::Sum: return X - s;
    case InvariantKind::Ratio: return s / X;
    case InvariantKind::Product: return X / s;
    case InvariantKind::RecipDiff: return 1 / (1 / s - X);
    case InvariantKind::RecipSum: return 1 / (X - 1 / s);
  }
  throw DomainError("bad invariant kind");
}

Scalar InvariantMap::act(const Scalar& u, const Scalar& eps, bool even) const {
  switch (flow) {
    case FlowKind::Shift: return u + eps;
    case FlowKind::AltShift: return even ? u + eps : u - eps;
    case FlowKind::Scale: return eps * u;
    case FlowKind::AltScale: return even ? eps * u : u / eps;
    case FlowKind::Square: return u / (1 - eps * u);
    case FlowKind::AltSquare: return even ? u / (1 - eps * u) : u / (1 + eps * u);
  }
  throw DomainError("bad flow kind");
}

const std::vector<InvariantMap>& invariant_table() {
  using I = InvariantKind;
  using G = FlowKind;
  using N = Normalization;
  static const std::vector<InvariantMap> table = {
      {"Q1d0", "eta1", G::Shift, I::Diff, "H_IIIa"},
      {"Q1d0", "eta2", G::Scale, I::Ratio, "H_II"},
      {"Q1d0", "eta3", G::Square, I::RecipDiff, "H_IIIa"},
      {"Q1d1", "eta1", G::Shift, I::Diff, "H_II"},
      {"Q3d0", "eta1", G::Scale, I::Ratio, "H_I"},
      {"H1", "eta1", G::Shift, I::Diff, "H_V"},
      {"H1", "eta2", G::AltShift, I::Sum, "F_V"},
      {"H1", "eta3", G::AltScale, I::Product, "F_IV"},
      {"H2", "eta1", G::AltShift, I::Sum, "F_IV"},
      {"H3d0", "eta1", G::Scale, I::Ratio, "H_IIIb"},
      {"H3d0", "eta2", G::AltScale, I::Product, "F_III"},
      {"H3d1", "eta1", G::AltScale, I::Product, "F_II"},
      {"A1d0", "eta1", G::AltShift, I::Sum, "F_III", N::ScaleByParam},
      {"A1d0", "eta2", G::Scale, I::Ratio, "H_II", N::Negate},
      {"A1d0", "eta3", G::AltSquare, I::RecipSum, "F_III", N::ScaleByParam},
      {"A1d1", "eta1", G::AltShift, I::Sum, "F_II"},
      {"A2", "eta1", G::AltScale, I::Product, "F_I"},
  };
  return table;
}

const InvariantMap& invariant(std::string_view family, std::string_view characteristic) {
  for (const auto& inv : invariant_table()) {
    if (inv.family == family && inv.characteristic == characteristic) return inv;
  }
  throw UnknownId("no invariant " + std::string(family) + "/" + std::string(characteristic));
}

namespace {

// Sampled rationals are never zero, so they also serve as scaling factors.
Scalar nonzero_rational(Sampler& s) { return s.rational(); }

}  // namespace

CheckResult invariant_check(const InvariantMap& inv, int samples, std::uint64_t seed) {
  CheckResult rep;
  rep.check = "invariant";
  rep.subjects = {inv.family, inv.id()};
  rep.details["characteristic"] = to_string(inv.flow);
  rep.details["invariant"] = to_string(inv.kind);
  const BulkEquation eq = bulk_equation(inv.family);
  run_samples(rep, samples, seed, [&](Sampler& s) {
    Scalar u00 = nonzero_rational(s), u10 = nonzero_rational(s), u01 = nonzero_rational(s);
    Scalar a = s.rational(), b = s.rational();
    Scalar eps = nonzero_rational(s);
    Scalar u11 = solve_vertex(eq, Corner::U11, {u00, u10, u01, u00}, a, b);
    SampleOutcome out;
    // both orientations of an edge: even-odd and odd-even
    Scalar d1 = inv(inv.act(u00, eps, true), inv.act(u10, eps, false)) - inv(u00, u10);
    Scalar d2 = inv(inv.act(u10, eps, false), inv.act(u11, eps, true)) - inv(u10, u11);
    Scalar q = eq.eval(inv.act(u00, eps, true), inv.act(u10, eps, false), inv.act(u01, eps, false),
                       inv.act(u11, eps, true), a, b);
    Scalar r = discrepancy(d1, Scalar(0));
    for (const Scalar* v : {&d2, &q}) {
      Scalar e = discrepancy(*v, Scalar(0));
      if (r.magnitude() < e.magnitude()) r = e;
    }
    out.residual = r;
    out.ok = d1.is_zero() && d2.is_zero() && q.is_zero();
    if (!out.ok) {
      out.trace = {{"u00", u00.to_string()}, {"u10", u10.to_string()}, {"u01", u01.to_string()},
                   {"a", a.to_string()},     {"b", b.to_string()},     {"eps", eps.to_string()},
                   {"edge_even_odd", d1.to_string()}, {"edge_odd_even", d2.to_string()},
                   {"Q_after_flow", q.to_string()}};
    }
    return out;
  });
  return rep;
}

// ---------------------------------------------------------------------------

YangBaxterMap YangBaxterMap::canonical() const {
  YangBaxterMap c = *this;
  c.normalization = Normalization::Identity;
  const EdgeMapFn f = map;
  switch (normalization) {
    case Normalization::Identity: break;
    case Normalization::ScaleByParam:
      c.map = [f](const Scalar& X, const Scalar& Y, const Scalar& a, const Scalar& b) {
        auto [U, V] = f(a * X, b * Y, a, b);
        return EdgePair{U / a, V / b};
      };
      break;
    case Normalization::Negate:
      c.map = [f](const Scalar& X, const Scalar& Y, const Scalar& a, const Scalar& b) {
        auto [U, V] = f(-X, -Y, a, b);
        return EdgePair{-U, -V};
      };
      break;
  }
  return c;
}

YangBaxterMap YangBaxterMap::perturbed(const Scalar& delta) const {
  YangBaxterMap p = *this;
  p.source += "+perturbed";
  const EdgeMapFn f = map;
  p.map = [f, delta](const Scalar& X, const Scalar& Y, const Scalar& a, const Scalar& b) {
    auto [U, V] = f(X, Y, a, b);
    return EdgePair{U + delta, V};
  };
  return p;
}

YangBaxterMap identity_map() {
  YangBaxterMap m;
  m.source = "identity";
  m.yb_family = "identity";
  m.map = [](const Scalar& X, const Scalar& Y, const Scalar&, const Scalar&) { return EdgePair{X, Y}; };
  return m;
}

namespace {

EdgePair derive_at(const BulkEquation& eq, const InvariantMap& inv, const Scalar& X, const Scalar& Y,
                   const Scalar& a, const Scalar& b, const Scalar& u00) {
  Scalar u10 = inv.solve_t(u00, X);
  Scalar u11 = inv.solve_t(u10, Y);
  Scalar u01 = solve_vertex(eq, Corner::U01, {u00, u10, u00, u11}, a, b);
  return {inv(u01, u11), inv(u00, u01)};
}

const std::array<Scalar, 5>& gauges() {
  static const std::array<Scalar, 5> g = {Scalar::fraction(3, 7), Scalar::fraction(-5, 11),
                                          Scalar::fraction(2, 13), Scalar::fraction(7, 3),
                                          Scalar::fraction(-1, 9)};
  return g;
}

bool degenerate(const std::exception& e) {
  return dynamic_cast<const SingularSolve*>(&e) || dynamic_cast<const DivisionByZero*>(&e);
}

}  // namespace

YangBaxterMap yb_map_derive(const InvariantMap& inv) {
  const BulkEquation eq = bulk_equation(inv.family);
  if (eq.mode() != FieldMode::ExactRational) {
    throw DerivationError("edge maps are derived in exact arithmetic only");
  }
  // gauge independence at a handful of fixed points
  int compared = 0;
  for (std::uint64_t i = 0; i < 24 && compared < 6; ++i) {
    Sampler s(0x6a09e667f3bcc908ULL, i);
    Scalar X = s.rational(), Y = s.rational(), a = s.rational(), b = s.rational();
    Scalar g1 = s.rational(), g2 = s.rational();
    EdgePair r1, r2;
    try {
      r1 = derive_at(eq, inv, X, Y, a, b, g1);
      r2 = derive_at(eq, inv, X, Y, a, b, g2);
    } catch (const std::exception& e) {
      if (degenerate(e)) continue;
      throw;
    }
    ++compared;
    if (!(r1.first == r2.first) || !(r1.second == r2.second)) {
      throw DerivationError("edge relations of " + inv.id() + " do not determine (U, V): the result depends on u00");
    }
  }
  if (compared == 0) throw DerivationError("edge relations of " + inv.id() + " are degenerate");

  YangBaxterMap m;
  m.source = inv.id();
  m.yb_family = inv.yb_family;
  m.normalization = inv.normalization;
  m.map = [eq, inv](const Scalar& X, const Scalar& Y, const Scalar& a, const Scalar& b) {
    for (const Scalar& g : gauges()) {
      try {
        return derive_at(eq, inv, X, Y, a, b, g);
      } catch (const std::exception& e) {
        if (!degenerate(e)) throw;
      }
    }
    throw DivisionByZero("edge map undefined at this point");
  };
  return m;
}

CheckResult ybe_check(const YangBaxterMap& R, int samples, std::uint64_t seed) {
  CheckResult rep;
  rep.check = "yang-baxter";
  rep.subjects = {R.source};
  rep.details["yb_family"] = R.yb_family;
  rep.details["normalization"] = to_string(R.normalization);
  run_samples(rep, samples, seed, [&](Sampler& s) {
    Scalar X1 = s.rational(), X2 = s.rational(), X3 = s.rational();
    Scalar a1 = s.rational(), a2 = s.rational(), a3 = s.rational();
    // R12, then R13, then R23
    auto [A, B] = R(X1, X2, a1, a2);
    auto [A2, C] = R(A, X3, a1, a3);
    auto [B2, C2] = R(B, C, a2, a3);
    // R23, then R13, then R12
    auto [b1, c1] = R(X2, X3, a2, a3);
    auto [x1, c2] = R(X1, c1, a1, a3);
    auto [x2, b2] = R(x1, b1, a1, a2);
    std::array<Scalar, 3> lhs = {A2, B2, C2}, rhs = {x2, b2, c2};
    SampleOutcome out;
    out.residual = Scalar(0);
    for (int i = 0; i < 3; ++i) {
      Scalar d = discrepancy(lhs[i], rhs[i]);
      if (out.residual.magnitude() < d.magnitude()) out.residual = d;
      if (!(lhs[i] == rhs[i])) out.ok = false;
    }
    if (!out.ok) {
      Json l = Json::array(), r = Json::array();
      for (int i = 0; i < 3; ++i) {
        l.push_back(lhs[i].to_string());
        r.push_back(rhs[i].to_string());
      }
      out.trace = {{"X", {X1.to_string(), X2.to_string(), X3.to_string()}},
                   {"a", {a1.to_string(), a2.to_string(), a3.to_string()}},
                   {"R12R13R23", l},
                   {"R23R13R12", r}};
    }
    return out;
  });
  return rep;
}

namespace {

// Throws SingularSample when f is a constant: a special point, not a verdict.
Moebius2 fit_invertible(const std::function<Scalar(const Scalar&)>& f) {
  Moebius2 m = moebius_fit(f, FieldMode::ExactRational);
  if (m.det().is_zero()) throw SingularSample("constant restriction");
  return m;
}

// t with m(t) = v.
Scalar invert(const Moebius2& m, const Scalar& v) { return (m.b - m.d * v) / (m.c * v - m.a); }

}  // namespace

CheckResult quadrirational_check(const YangBaxterMap& R, int samples, std::uint64_t seed) {
  CheckResult rep;
  rep.check = "quadrirational";
  rep.subjects = {R.source};
  run_samples(rep, samples, seed, [&](Sampler& s) {
    Scalar X = s.rational(), Y = s.rational(), a = s.rational(), b = s.rational();
    // Fits run in a random affine coordinate t -> p + r t, away from the special
    // values 0, 1, -1 of the invariants; Moebius-ness is unaffected.
    const Scalar p = s.rational(), r = s.rational();
    auto at = [&](const Scalar& t) { return p + r * t; };
    auto fit_invertible = [&](const std::function<Scalar(const Scalar&)>& f) {
      Moebius2 m = qgb::fit_invertible([&](const Scalar& t) { return f(at(t)); });
      // back to the original coordinate: m o T^{-1}
      return m * Moebius2{Scalar(1), -p, Scalar(0), r};
    };
    auto fit_inner = [&](const std::function<Scalar(const Scalar&)>& f) {
      try {
        return fit_invertible(f);
      } catch (const SingularSample&) {
        throw DivisionByZero();
      }
    };
    auto [U0, V0] = R(X, Y, a, b);
    // (Y, U) -> X and (X, V) -> Y: the two companion maps
    auto x_to_u = [&](const Scalar& t) { return R(t, Y, a, b).first; };
    auto y_to_v = [&](const Scalar& t) { return R(X, t, a, b).second; };
    // (U, V) -> (X, Y): along the curve V = V0, U must fix X; likewise with U = U0
    auto along_v = [&](const Scalar& t) {
      Moebius2 m = fit_inner([&](const Scalar& y) { return R(t, y, a, b).second; });
      return R(t, invert(m, V0), a, b).first;
    };
    auto along_u = [&](const Scalar& t) {
      Moebius2 m = fit_inner([&](const Scalar& x) { return R(x, t, a, b).first; });
      return R(invert(m, U0), t, a, b).second;
    };
    const std::array<std::pair<const char*, std::function<Scalar(const Scalar&)>>, 4> restrictions = {{
        {"X->U", x_to_u}, {"Y->V", y_to_v}, {"X->U on V=const", along_v}, {"Y->V on U=const", along_u}}};
    SampleOutcome out;
    out.residual = Scalar(0);
    for (const auto& [name, f] : restrictions) {
      try {
        fit_invertible(f);
      } catch (const UnsupportedK& e) {
        out.ok = false;
        out.residual = Scalar(1);
        out.trace = {{"restriction", name}, {"reason", e.what()}, {"X", X.to_string()}, {"Y", Y.to_string()},
                     {"a", a.to_string()}, {"b", b.to_string()}};
        break;
      }
    }
    return out;
  });
  return rep;
}

// ---------------------------------------------------------------------------

BoundaryEquation prescription_q(const InvariantMap& inv, const ReflectionMap& refl, const Scalar& mu) {
  BoundaryRow row;
  row.id = "presc:" + inv.id() + ":" + refl.source;
  row.family = inv.family;
  row.linear_xz = false;
  const ReflectionFn h = refl.h;
  const ParamMapFn sig = refl.sigma;
  const Normalization norm = inv.normalization;
  row.sigma = [sig](const Scalar& a, const RowParams& p) { return sig(a, p.mu); };
  row.q = [inv, h, sig, norm](const Scalar& x, const Scalar& y, const Scalar& z, const Scalar& a,
                              const RowParams& p) {
    Scalar X = inv(y, x);
    Scalar V;
    switch (norm) {
      case Normalization::Identity: V = h(X, a, p.mu); break;
      case Normalization::ScaleByParam: V = sig(a, p.mu) * h(X / a, a, p.mu); break;
      case Normalization::Negate: V = -h(-X, a, p.mu); break;
    }
    return inv(y, z) - V;
  };
  return BoundaryEquation(std::move(row), bulk_equation(inv.family), mu);
}

namespace {

using S = Scalar;

ParamMapFn mu2_over_a() {
  return [](const S& a, const S& mu) { return mu * mu / a; };
}
ParamMapFn two_mu_minus_a() {
  return [](const S& a, const S& mu) { return 2 * mu - a; };
}
ParamMapFn mu_minus_a() {
  return [](const S& a, const S& mu) { return mu - a; };
}
ParamMapFn mu_over_a() {
  return [](const S& a, const S& mu) { return mu / a; };
}

}  // namespace

const std::vector<ReflectionEntry>& reflection_table() {
  static const std::vector<ReflectionEntry> table = {
      // F_III in canonical variables
      {"A1d0/eta1", {"-aX/mu", [](const S& X, const S& a, const S& mu) { return -a * X / mu; }, mu2_over_a()},
       "A1d0.b1", 1},
      {"A1d0/eta1", {"aX/mu", [](const S& X, const S& a, const S& mu) { return a * X / mu; }, mu2_over_a()},
       "A1d0.b1", -1},
      // H_II in canonical variables
      {"A1d0/eta2",
       {"(a+mu-X mu)/a", [](const S& X, const S& a, const S& mu) { return (a + mu - X * mu) / a; }, mu2_over_a()},
       "A1d0.b2", 1},
      {"A1d0/eta2",
       {"aX/(aX+mu-X mu)", [](const S& X, const S& a, const S& mu) { return a * X / (a * X + mu - X * mu); },
        mu2_over_a()},
       "A1d0.b1", -1},
      {"A1d0/eta2", {"-X", [](const S& X, const S&, const S&) { return -X; }, two_mu_minus_a()}, "A1d0.b3", 1},
      {"A1d0/eta2",
       {"(a+(X-1)mu)/(aX+mu-X mu)",
        [](const S& X, const S& a, const S& mu) { return (a + (X - 1) * mu) / (a * X + mu - X * mu); },
        two_mu_minus_a()},
       "A1d0.b4", 1},
      {"A1d0/eta3", {"-aX/mu", [](const S& X, const S& a, const S& mu) { return -a * X / mu; }, mu2_over_a()},
       "A1d0.b2", 1},
      {"A1d0/eta3", {"aX/mu", [](const S& X, const S& a, const S& mu) { return a * X / mu; }, mu2_over_a()},
       "A1d0.b2", -1},
      // H1 with I = st
      {"H1/eta3", {"-X", [](const S& X, const S&, const S&) { return -X; }, two_mu_minus_a()}, "H1.b1", 1},
      {"H1/eta3", {"X-a+mu", [](const S& X, const S& a, const S& mu) { return X - a + mu; }, two_mu_minus_a()},
       "H1.b2", 1},
      // H2 with I = s+t
      {"H2/eta1", {"-X-mu", [](const S& X, const S&, const S& mu) { return -X - mu; }, mu_minus_a()}, "H2.b1", 1},
      {"H2/eta1", {"X", [](const S& X, const S&, const S&) { return X; }, mu_minus_a()}, "H2.b2", 1},
      // H3, delta = 1, with I = st
      {"H3d1/eta1", {"-X", [](const S& X, const S&, const S&) { return -X; }, mu_over_a()}, "H3d1.b1+", 1},
      {"H3d1/eta1", {"X", [](const S& X, const S&, const S&) { return X; }, mu_over_a()}, "H3d1.b1-", 1},
      {"H3d1/eta1",
       {"-X-a-mu/a", [](const S& X, const S& a, const S& mu) { return -X - a - mu / a; }, mu_over_a()},
       "H3d1.b2+", 1},
      {"H3d1/eta1",
       {"X+a-mu/a", [](const S& X, const S& a, const S& mu) { return X + a - mu / a; }, mu_over_a()},
       "H3d1.b2-", 1},
      // Q1, delta = 0
      {"Q1d0/eta1", {"mu X/a", [](const S& X, const S& a, const S& mu) { return mu * X / a; }, mu2_over_a()},
       "Q1d0.b1", 1},
      {"Q1d0/eta2", {"-X", [](const S& X, const S&, const S&) { return -X; }, two_mu_minus_a()}, "Q1d0.b3", 1},
      {"Q1d0/eta3", {"-mu X/a", [](const S& X, const S& a, const S& mu) { return -mu * X / a; }, mu2_over_a()},
       "Q1d0.b2", 1},
  };
  return table;
}

namespace {

const InvariantMap& invariant_by_id(const std::string& id) {
  auto slash = id.find('/');
  return invariant(id.substr(0, slash), id.substr(slash + 1));
}

}  // namespace

CheckResult prescription_locus_check(const ReflectionEntry& entry, int samples, std::uint64_t seed) {
  const InvariantMap& inv = invariant_by_id(entry.invariant);
  CheckResult rep;
  rep.check = "prescription-locus";
  rep.subjects = {entry.invariant, entry.row};
  rep.details["h"] = entry.refl.source;
  rep.details["mu_sign"] = entry.mu_sign;
  run_samples(rep, samples, seed, [&](Sampler& s) {
    Scalar mu = s.rational(), a = s.rational(), x = s.rational(), y = s.rational();
    BoundaryEquation p = prescription_q(inv, entry.refl, mu);
    BoundaryEquation c = boundary_equation(entry.row, entry.mu_sign * mu);
    Scalar z1 = solve_boundary(p, BoundarySlot::Z, x, y, a);
    Scalar z2 = solve_boundary(c, BoundarySlot::Z, x, y, a);
    Scalar s1 = p.sigma(a), s2 = c.sigma(a);
    SampleOutcome out;
    out.ok = z1 == z2 && s1 == s2;
    out.residual = discrepancy(z1, z2);
    if (!out.ok) {
      out.trace = {{"mu", mu.to_string()}, {"a", a.to_string()}, {"x", x.to_string()}, {"y", y.to_string()},
                   {"z_prescription", z1.to_string()}, {"z_row", z2.to_string()},
                   {"sigma_prescription", s1.to_string()}, {"sigma_row", s2.to_string()}};
    }
    return out;
  });
  return rep;
}

std::vector<CheckResult> maps_suite(int samples, std::uint64_t seed, std::string_view family) {
  std::vector<CheckResult> out;
  for (const auto& inv : invariant_table()) {
    if (!family.empty() && inv.family != family) continue;
    out.push_back(invariant_check(inv, samples, seed));
    YangBaxterMap R = yb_map_derive(inv);
    out.push_back(ybe_check(R, samples, seed));
    out.push_back(quadrirational_check(R, samples, seed));
  }
  const Scalar mu = Scalar::fraction(5, 7);
  for (const auto& e : reflection_table()) {
    const InvariantMap& inv = invariant_by_id(e.invariant);
    if (!family.empty() && inv.family != family) continue;
    out.push_back(prescription_locus_check(e, samples, seed));
    BoundaryEquation p = prescription_q(inv, e.refl, mu);
    CheckResult c = check_boundary_consistency(p.bulk(), p, samples, seed);
    c.details["h"] = e.refl.source;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace qgb
