#include "qgb/toda.hpp"

#include <sstream>

#include "qgb/sampling.hpp"

namespace qgb {

Scalar boundary_leg(const BoundaryEquation& beq, const Scalar& y, const Scalar& a,
                    const std::optional<Scalar>& xbar) {
  const BulkEquation& eq = beq.bulk();
  ThreeLegForm legs = three_leg_form(eq);
  if (!beq.has_k()) throw UnsupportedK("row " + beq.id() + " has no folding function");
  if (beq.k_uses_x() && !xbar) {
    throw NeedsBoundaryValue("k of row " + beq.id() + " depends on the boundary value");
  }
  Scalar x = xbar ? *xbar : Scalar::zero(y.mode());
  return legs.phi(y, beq.k(x, y, a), a, beq.sigma(a));
}

std::optional<Scalar> star_sum(const QuadGraphB& g, const BoundaryEquation* beq,
                               const FieldAssignment& field, int white) {
  struct Leg {
    int p, r;     // black neighbours, in contribution order p -> r
    int cp, cr;   // classes of the edges w-p and w-r
    int opp;      // opposite white (quads)
    int face;
    bool triangle;
  };
  std::vector<Leg> legs;
  for (int f = 0; f < g.face_count(); ++f) {
    const Face& face = g.faces()[f];
    const auto& v = face.v;
    if (face.kind == FaceKind::Triangle) {
      if (v[1] == white) legs.push_back({v[0], v[2], face.cls_a, face.cls_b, -1, f, true});
      continue;
    }
    if (v[0] == white) legs.push_back({v[1], v[2], face.cls_a, face.cls_b, v[3], f, false});
    if (v[3] == white) legs.push_back({v[1], v[2], face.cls_b, face.cls_a, v[0], f, false});
    if (v[1] == white) legs.push_back({v[0], v[3], face.cls_a, face.cls_b, v[2], f, false});
    if (v[2] == white) legs.push_back({v[0], v[3], face.cls_b, face.cls_a, v[1], f, false});
  }
  if (legs.empty()) return std::nullopt;

  ThreeLegForm form = three_leg_form(bulk_equation("Q1d0"));
  const Scalar& w = *field.at(white);
  std::vector<bool> used(legs.size(), false);
  std::size_t start = 0;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (legs[i].triangle) {
      start = i;
      break;
    }
  }
  Scalar total = Scalar::zero(w.mode());
  int first_black = legs[start].p;
  int current = first_black;
  std::size_t idx = start;
  bool forward = true;
  for (std::size_t count = 0; count < legs.size(); ++count) {
    const Leg& L = legs[idx];
    used[idx] = true;
    int from = forward ? L.p : L.r;
    int to = forward ? L.r : L.p;
    if (from != current) return std::nullopt;
    if (L.triangle) {
      if (!forward || !beq) return std::nullopt;
      const Scalar& a = g.param(L.cp);
      total = total + boundary_leg(*beq, w, a, *field.at(L.p));
    } else {
      const Scalar& ap = g.param(forward ? L.cp : L.cr);
      const Scalar& ar = g.param(forward ? L.cr : L.cp);
      total = total + form.phi(w, *field.at(L.opp), ap, ar);
    }
    current = to;
    if (count + 1 == legs.size()) break;
    // next unused leg touching the current black vertex
    std::size_t next = legs.size();
    for (std::size_t j = 0; j < legs.size(); ++j) {
      if (used[j]) continue;
      if (legs[j].p == current) {
        next = j;
        forward = true;
        break;
      }
      if (legs[j].r == current) {
        next = j;
        forward = false;
        break;
      }
    }
    if (next == legs.size()) return std::nullopt;
    idx = next;
  }
  if (current != first_black) return std::nullopt;
  return total;
}

// ---------------------------------------------------------------------------

TodaLattice::TodaLattice(int width_, int steps_, Scalar a_, Scalar mu_, Scalar xbar0_, std::string row_)
    : width(width_), steps(steps_), a(std::move(a_)), mu(std::move(mu_)), xbar0(std::move(xbar0_)),
      row(std::move(row_)) {
  if (width < 2 || steps < 1) throw DomainError("Toda lattice needs width >= 2 and steps >= 1");
  q.assign(steps + 1, std::vector<std::optional<Scalar>>(width + 1));
  xbar = {xbar0};
}

BoundaryEquation TodaLattice::boundary() const { return boundary_equation(row, mu); }

const Scalar& TodaLattice::at(int m, int n) const {
  const auto& v = q.at(m).at(n);
  if (!v) throw DomainError("q(" + std::to_string(m) + "," + std::to_string(n) + ") is unset");
  return *v;
}

std::string TodaLattice::to_csv() const {
  std::ostringstream os;
  os << "m,n,value\n";
  for (int m = 0; m <= steps; ++m) {
    for (int n = 0; n <= width; ++n) {
      if (q[m][n]) os << m << ',' << n << ',' << q[m][n]->to_string() << '\n';
    }
  }
  return os.str();
}

Json TodaLattice::to_json() const {
  Json j;
  j["width"] = width;
  j["steps"] = steps;
  j["a"] = a.to_string();
  j["mu"] = mu.to_string();
  j["xbar0"] = xbar0.to_string();
  j["row"] = row;
  j["closure"] = "dirichlet-affine";
  Json xb = Json::array();
  for (const auto& x : xbar) xb.push_back(x.to_string());
  j["xbar"] = std::move(xb);
  Json cells = Json::array();
  for (int m = 0; m <= steps; ++m) {
    for (int n = 0; n <= width; ++n) {
      if (q[m][n]) cells.push_back({{"m", m}, {"n", n}, {"value", q[m][n]->to_string()}});
    }
  }
  j["q"] = std::move(cells);
  return j;
}

Scalar toda_residual(const TodaLattice& lat, int m, int n) {
  const Scalar& c = lat.at(m, n);
  return 1 / (lat.at(m, n + 1) - c) - 1 / (c - lat.at(m, n - 1)) - 1 / (lat.at(m + 1, n) - c) +
         1 / (c - lat.at(m - 1, n));
}

void toda_evolve(TodaLattice& lat, int steps) {
  if (steps > lat.steps) throw DomainError("toda_evolve beyond the lattice size");
  const int W = lat.width;
  for (int n = 0; n <= W; ++n) {
    if (!lat.q[0][n] || !lat.q[1][n]) throw DomainError("toda_evolve needs columns m = 0 and m = 1");
  }
  BoundaryEquation beq = lat.boundary();
  auto guard = [&](const Scalar& d, int m, int n) {
    if (d.is_zero()) throw BreakdownError("coincident values near (" + std::to_string(m) + "," + std::to_string(n) + ")", m, n);
  };
  // boundary values for the columns already present
  while (static_cast<int>(lat.xbar.size()) < 2) {
    int m = static_cast<int>(lat.xbar.size()) - 1;
    if (lat.at(m, 1).is_zero()) throw BreakdownError("q(m,1) vanishes", m, 1);
    lat.xbar.push_back(solve_boundary(beq, BoundarySlot::Z, lat.xbar[m], lat.at(m, 1), lat.a));
  }
  const Scalar dW = lat.at(1, W) - lat.at(0, W);
  for (int m = 1; m < steps; ++m) {
    for (int n = 1; n < W; ++n) {
      const Scalar& c = lat.at(m, n);
      Scalar d1 = lat.at(m, n + 1) - c, d2 = c - lat.at(m, n - 1), d3 = c - lat.at(m - 1, n);
      guard(d1, m, n);
      guard(d2, m, n);
      guard(d3, m, n);
      Scalar rhs = 1 / d1 - 1 / d2 + 1 / d3;
      guard(rhs, m + 1, n);
      lat.q[m + 1][n] = c + 1 / rhs;
    }
    lat.q[m + 1][W] = lat.at(0, W) + (m + 1) * dW;
    if (lat.at(m + 1, 1).is_zero()) throw BreakdownError("q(m,1) vanishes", m + 1, 1);
    try {
      if (static_cast<int>(lat.xbar.size()) < m + 2) {
        lat.xbar.push_back(solve_boundary(beq, BoundarySlot::Z, lat.xbar[m], lat.at(m, 1), lat.a));
      }
      lat.q[m + 1][0] = beq.k(lat.xbar[m + 1], lat.at(m + 1, 1), lat.a);
    } catch (const SingularSolve&) {
      throw BreakdownError("boundary step degenerates", m + 1, 0);
    } catch (const DivisionByZero&) {
      throw BreakdownError("boundary step hits a pole", m + 1, 0);
    }
  }
}

void seed_columns(TodaLattice& lat, std::uint64_t seed) {
  BoundaryEquation beq = lat.boundary();
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Sampler s(seed, attempt);
    try {
      lat.xbar = {lat.xbar0};
      for (int m = 0; m <= 1; ++m) {
        for (int n = 1; n <= lat.width; ++n) lat.q[m][n] = s.rational();
      }
      lat.xbar.push_back(solve_boundary(beq, BoundarySlot::Z, lat.xbar[0], lat.at(0, 1), lat.a));
      for (int m = 0; m <= 1; ++m) lat.q[m][0] = beq.k(lat.xbar[m], lat.at(m, 1), lat.a);
      return;
    } catch (const SingularSolve&) {
    } catch (const DivisionByZero&) {
    }
  }
  throw InconclusiveError("no admissible initial columns");
}

std::vector<CheckResult> toda_checks(const TodaLattice& lat) {
  BoundaryEquation beq = lat.boundary();
  CheckResult interior, boundary;
  interior.check = "toda-interior";
  boundary.check = "toda-boundary";
  interior.subjects = boundary.subjects = {"Q1d0", lat.row};
  interior.details["closure"] = "dirichlet-affine";
  for (CheckResult* c : {&interior, &boundary}) {
    c->passed = true;
    c->residual.observe(Scalar(0));
  }
  auto note = [](CheckResult& c, const Scalar& r, int m, int n) {
    ++c.samples;
    c.residual.observe(discrepancy(r, Scalar(0)));
    if (!r.is_zero() && c.passed) {
      c.passed = false;
      c.first_failure = {{"m", m}, {"n", n}, {"residual", r.to_string()}};
    }
  };
  for (int m = 1; m < lat.steps; ++m) {
    for (int n = 1; n < lat.width; ++n) {
      if (lat.q[m + 1][n] && lat.q[m - 1][n]) note(interior, toda_residual(lat, m, n), m, n);
    }
  }
  for (int m = 0; m <= lat.steps && m < static_cast<int>(lat.xbar.size()); ++m) {
    if (!lat.q[m][0] || !lat.q[m][1]) continue;
    note(boundary, lat.at(m, 0) - beq.k(lat.xbar[m], lat.at(m, 1), lat.a), m, 0);
  }
  return {interior, boundary};
}

// ---------------------------------------------------------------------------

namespace {

struct StripRun {
  Strip strip;
  FieldAssignment field;
  Scalar top_corner;  // q_{M,W}: Dirichlet data outside every face
};

StripRun run_strip(const CrossOptions& o, const BoundaryEquation& beq, const BulkEquation& eq) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Sampler s(o.seed, static_cast<std::uint64_t>(attempt));
    StripRun run{make_strip(o.width, o.steps, o.a, beq), {}, {}};
    const Strip& st = run.strip;
    FieldAssignment init(st.graph.vertex_count());
    for (int d = 1; d <= 2 * o.width; d += 2) init[st.vertex(-1, d)] = d == 1 ? o.xbar0 : s.rational();
    for (int d = 2; d <= 2 * o.width; d += 2) init[st.vertex(0, d)] = s.rational();
    Scalar delta = s.rational();
    const Scalar& top0 = *init[st.vertex(0, 2 * o.width)];
    for (int m = 1; m < o.steps; ++m) init[st.vertex(2 * m, 2 * o.width)] = top0 + m * delta;
    run.top_corner = top0 + o.steps * delta;
    try {
      run.field = propagate(st.graph, eq, &beq, init);
    } catch (const PropagationError&) {
      continue;
    }
    bool zero_q1 = false;
    for (int m = 0; m <= o.steps; ++m) {
      if (run.field[st.vertex(2 * m, 2)]->is_zero()) zero_q1 = true;
    }
    if (zero_q1) continue;  // q_{m,1} must not vanish
    return run;
  }
  throw InconclusiveError("no non-degenerate strip data found");
}

CheckResult make_check(const std::string& name, int count) {
  CheckResult c;
  c.check = name;
  c.subjects = {"Q1d0", "Q1d0.b3"};
  c.samples = count;
  c.residual.observe(Scalar(0));
  c.passed = true;
  return c;
}

void record(CheckResult& c, const Scalar& residual, Json trace) {
  c.residual.observe(discrepancy(residual, Scalar(0)));
  if (!residual.is_zero() && c.passed) {
    c.passed = false;
    c.first_failure = std::move(trace);
  }
}

}  // namespace

CrossReport crosscheck_reduction(const CrossOptions& o) {
  const BulkEquation eq = bulk_equation("Q1d0");
  const BoundaryEquation beq = boundary_equation("Q1d0.b3", o.mu);
  const int W = o.width, M = o.steps;
  if (W < 2 || M < 2) throw DomainError("crosscheck needs width >= 2 and steps >= 2");
  StripRun run = run_strip(o, beq, eq);
  const Strip& st = run.strip;
  const FieldAssignment& u = run.field;
  const Scalar sa = beq.sigma(o.a);

  CrossReport rep;
  TodaLattice& lat = rep.extracted;
  lat = TodaLattice(W, M, o.a, o.mu, o.xbar0);
  for (int m = 0; m <= M; ++m) {
    for (int n = 1; n <= W; ++n) {
      lat.q[m][n] = (m == M && n == W) ? run.top_corner : *u[st.vertex(2 * m, 2 * n)];
    }
  }
  lat.xbar.clear();
  for (int m = 0; m <= M; ++m) lat.xbar.push_back(*u[st.vertex(2 * m - 1, 1)]);

  // boundary row from the folded virtual quad, then compared with the closed form k
  rep.boundary = make_check("toda-boundary", M);
  rep.boundary.details["mu_shift"] = o.mu_shift.to_string();
  const Scalar mu_k = o.mu + o.mu_shift;
  for (int m = 0; m < M; ++m) {
    Scalar q0 = solve_vertex(eq, Corner::U01, {lat.xbar[m], lat.at(m, 1), lat.xbar[m], lat.xbar[m + 1]},
                             o.a, sa);
    lat.q[m][0] = q0;
    Scalar xm = (m % 2 == 0) ? o.xbar0 : -o.xbar0;
    const Scalar& q1 = lat.at(m, 1);
    Scalar k = (mu_k * xm * q1 + (o.a - mu_k) * o.xbar0 * o.xbar0) / ((o.a - mu_k) * q1 + mu_k * xm);
    record(rep.boundary, q0 - k, {{"m", m}, {"q0", q0.to_string()}, {"k", k.to_string()}});
  }

  rep.alternation = make_check("xbar-alternation", M + 1);
  for (int m = 0; m <= M; ++m) {
    Scalar expect = (m % 2 == 0) ? o.xbar0 : -o.xbar0;
    record(rep.alternation, lat.xbar[m] - expect, {{"m", m}, {"xbar", lat.xbar[m].to_string()}});
  }

  rep.toda = make_check("toda-interior", (M - 1) * (W - 1));
  rep.toda.details["closure"] = "dirichlet-affine";
  for (int m = 1; m < M; ++m) {
    for (int n = 1; n < W; ++n) {
      record(rep.toda, toda_residual(lat, m, n), {{"m", m}, {"n", n}});
    }
  }

  rep.star = make_check("star-identity", 0);
  int stars = 0;
  for (int v = 0; v < st.graph.vertex_count(); ++v) {
    if (st.graph.vertices()[v].color != Color::White) continue;
    auto sum = star_sum(st.graph, &beq, u, v);
    if (!sum) continue;
    ++stars;
    record(rep.star, *sum, {{"vertex", st.graph.vertices()[v].name}});
  }
  rep.star.samples = stars;

  rep.evolve = make_check("toda-evolve", 0);
  TodaLattice ev(W, M, o.a, o.mu, o.xbar0);
  for (int m = 0; m <= 1; ++m) {
    for (int n = 0; n <= W; ++n) ev.q[m][n] = lat.q[m][n];
  }
  toda_evolve(ev, M);
  int compared = 0;
  for (int m = 2; m <= M; ++m) {
    for (int n = 0; n <= W; ++n) {
      if (!lat.q[m][n]) continue;
      ++compared;
      record(rep.evolve, ev.at(m, n) - lat.at(m, n), {{"m", m}, {"n", n}});
    }
  }
  rep.evolve.samples = compared;
  return rep;
}

}  // namespace qgb
