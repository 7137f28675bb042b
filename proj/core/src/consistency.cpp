#include "qgb/consistency.hpp"

namespace qgb {

namespace {

void agree_all(const Scalar& w1, const Scalar& w2, const Scalar& w3, SampleOutcome& out) {
  Residual r;
  r.observe(discrepancy(w1, w2));
  r.observe(discrepancy(w1, w3));
  r.observe(discrepancy(w2, w3));
  out.residual = r.value();
  out.ok = agree(w1, w2) && agree(w1, w3) && agree(w2, w3);
}

}  // namespace

ConsistencyReport check_cube(const BulkEquation& eq, int samples, std::uint64_t seed,
                             const CubeOptions& options) {
  ConsistencyReport rep;
  rep.check = "cube";
  rep.subjects = {eq.id()};
  if (options.mutate_face >= 0) rep.details["mutated_face"] = options.mutate_face;
  const FieldMode mode = eq.mode();
  const BulkEquation mutated = eq.with_offset(
      options.offset.mode() == mode ? options.offset : Scalar::real(options.offset.to_double()));
  auto face = [&](int i) -> const BulkEquation& { return i == options.mutate_face ? mutated : eq; };

  run_samples(rep, samples, seed, [&](Sampler& s) {
    Scalar u = s.field(mode), u1 = s.field(mode), u2 = s.field(mode), u3 = s.field(mode);
    Scalar a = s.parameter(mode), b = s.parameter(mode), c = s.parameter(mode);
    Scalar u12 = solve_vertex(face(0), Corner::U11, {u, u1, u2, u}, a, b);
    Scalar u13 = solve_vertex(face(1), Corner::U11, {u, u1, u3, u}, a, c);
    Scalar u23 = solve_vertex(face(2), Corner::U11, {u, u2, u3, u}, b, c);
    Scalar w1 = solve_vertex(face(3), Corner::U11, {u1, u12, u13, u}, b, c);
    Scalar w2 = solve_vertex(face(4), Corner::U11, {u2, u12, u23, u}, a, c);
    Scalar w3 = solve_vertex(face(5), Corner::U11, {u3, u13, u23, u}, a, b);
    SampleOutcome out;
    agree_all(w1, w2, w3, out);
    if (!out.ok) {
      out.trace = {{"u000", u.to_string()}, {"u100", u1.to_string()}, {"u010", u2.to_string()},
                   {"u001", u3.to_string()}, {"a", a.to_string()},   {"b", b.to_string()},
                   {"c", c.to_string()},     {"u111", {w1.to_string(), w2.to_string(), w3.to_string()}}};
    }
    return out;
  });
  return rep;
}

Json DodecaTrace::to_json() const {
  return {{"x", in.x.to_string()},        {"x1", in.x1.to_string()},
          {"x2", in.x2.to_string()},      {"a", in.a.to_string()},
          {"b", in.b.to_string()},        {"sigma_a", sigma_a.to_string()},
          {"sigma_b", sigma_b.to_string()}, {"y1", y1.to_string()},
          {"y2", y2.to_string()},         {"y3", y3.to_string()},
          {"z1", z1.to_string()},         {"z2", z2.to_string()},
          {"w", {w1.to_string(), w2.to_string(), w3.to_string()}}};
}

DodecaTrace trace_half_dodecahedron(const BulkEquation& eq, const BoundaryEquation& beq,
                                    const DodecaSample& sample) {
  DodecaTrace t;
  t.in = sample;
  const auto& [x, x1, x2, a, b] = sample;
  try {
    t.sigma_a = beq.sigma(a);
    t.sigma_b = beq.sigma(b);
    // first stage: one bulk face and two triangles around x
    t.y1 = solve_vertex(eq, Corner::U00, {x, x2, x1, x}, a, b);
    t.y2 = solve_boundary(beq, BoundarySlot::Z, x, x1, a);
    t.y3 = solve_boundary(beq, BoundarySlot::Z, x, x2, b);
    // second stage: the two side faces
    t.z1 = solve_vertex(eq, Corner::U10, {t.y1, x, x2, t.y3}, t.sigma_b, a);
    t.z2 = solve_vertex(eq, Corner::U10, {t.y1, x, x1, t.y2}, t.sigma_a, b);
    // third stage: w three ways
    t.w1 = solve_boundary(beq, BoundarySlot::Z, t.y2, t.z2, b);
    t.w2 = solve_boundary(beq, BoundarySlot::Z, t.y3, t.z1, a);
    t.w3 = solve_vertex(eq, Corner::U11, {t.y1, t.z1, t.z2, x}, t.sigma_b, t.sigma_a);
  } catch (const SingularSolve& e) {
    throw SingularSample(e.what());
  } catch (const DivisionByZero& e) {
    throw SingularSample(e.what());
  }
  return t;
}

ConsistencyReport check_boundary_consistency(const BulkEquation& eq, const BoundaryEquation& beq,
                                             int samples, std::uint64_t seed) {
  ConsistencyReport rep;
  rep.check = "boundary";
  rep.subjects = {eq.id(), beq.id()};
  rep.details["mu"] = beq.mu().to_string();
  const FieldMode mode = eq.mode();
  run_samples(rep, samples, seed, [&](Sampler& s) {
    DodecaSample d{s.field(mode), s.field(mode), s.field(mode), s.parameter(mode),
                   s.parameter(mode)};
    DodecaTrace t = trace_half_dodecahedron(eq, beq, d);
    SampleOutcome out;
    agree_all(t.w1, t.w2, t.w3, out);
    if (!out.ok) out.trace = t.to_json();
    return out;
  });
  return rep;
}

FoldReport check_fold(const BulkEquation& eq, const BoundaryEquation& beq, int samples,
                      std::uint64_t seed) {
  FoldReport rep;
  rep.check = "fold";
  rep.subjects = {eq.id(), beq.id()};
  rep.details["mu"] = beq.mu().to_string();
  if (!beq.has_k()) throw UnsupportedK("row " + beq.id() + " has no folding function");
  const FieldMode mode = eq.mode();
  int fail_i = 0, fail_ii = 0;
  run_samples(rep, samples, seed, [&](Sampler& s) {
    Scalar x = s.field(mode), u = s.field(mode), a = s.parameter(mode);
    Scalar sa = beq.sigma(a);
    Scalar k = beq.k(x, u, a);
    // (i) z from q, substituted in the folded bulk equation
    Scalar z = solve_boundary(beq, BoundarySlot::Z, x, u, a);
    Scalar r1 = eq.eval(x, u, k, z, a, sa);
    // (ii) z from the folded bulk equation, substituted in q
    Scalar z2 = solve_vertex(eq, Corner::U11, {x, u, k, x}, a, sa);
    Scalar r2 = beq.q(x, u, z2, a);
    SampleOutcome out;
    bool ok_i, ok_ii;
    if (mode == FieldMode::ExactRational) {
      ok_i = r1.is_zero();
      ok_ii = r2.is_zero();
      Residual r;
      r.observe(discrepancy(r1, Scalar(0)));
      r.observe(discrepancy(r2, Scalar(0)));
      out.residual = r.value();
    } else {
      ok_i = ok_ii = agree(z, z2);
      out.residual = discrepancy(z, z2);
    }
    if (!ok_i) ++fail_i;
    if (!ok_ii) ++fail_ii;
    out.ok = ok_i && ok_ii;
    if (!out.ok) {
      out.trace = {{"x", x.to_string()},   {"u", u.to_string()},    {"a", a.to_string()},
                   {"k", k.to_string()},   {"z_from_q", z.to_string()},
                   {"z_from_fold", z2.to_string()}};
    }
    return out;
  });
  rep.details["direction_q_to_fold_failures"] = fail_i;
  rep.details["direction_fold_to_q_failures"] = fail_ii;
  return rep;
}

}  // namespace qgb
