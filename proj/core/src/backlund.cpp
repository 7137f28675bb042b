#include "qgb/backlund.hpp"

#include <deque>

namespace qgb {

Scalar backlund_step(const BulkEquation& eq, const Scalar& g_v, const Scalar& g_v1,
                     const Scalar& f_v, const Scalar& alpha, const Scalar& lambda) {
  return solve_vertex(eq, Corner::U11, {g_v, g_v1, f_v, g_v}, alpha, lambda);
}

namespace {

struct Arc {
  int to;
  int cls;
};

std::vector<std::vector<Arc>> edge_lists(const QuadGraphB& g) {
  std::vector<std::vector<Arc>> adj(g.vertex_count());
  auto link = [&](int u, int v, int cls) {
    for (const Arc& a : adj[u]) {
      if (a.to == v) return;
    }
    adj[u].push_back({v, cls});
    adj[v].push_back({u, cls});
  };
  for (const Face& f : g.faces()) {
    if (f.kind == FaceKind::Quad) {
      link(f.v[0], f.v[1], f.cls_a);
      link(f.v[2], f.v[3], f.cls_a);
      link(f.v[0], f.v[2], f.cls_b);
      link(f.v[1], f.v[3], f.cls_b);
    } else {
      link(f.v[0], f.v[1], f.cls_a);
      link(f.v[1], f.v[2], f.cls_b);
    }
  }
  return adj;
}

// Breadth-first spread of `upper` over the vertical faces Q(lower(v), lower(v1), upper(v), upper(v1)).
void spread(const QuadGraphB& g, const BulkEquation& eq, const std::vector<std::vector<Arc>>& adj,
            const FieldAssignment& lower, FieldAssignment& upper, std::deque<int> queue,
            const Scalar& vertical, const char* floor) {
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (const Arc& arc : adj[v]) {
      if (upper[arc.to]) continue;
      try {
        upper[arc.to] = backlund_step(eq, *lower[v], *lower[arc.to], *upper[v], g.param(arc.cls), vertical);
      } catch (const SingularSolve&) {
        throw BacklundError(std::string("degenerate ") + floor + " step on edge " +
                            g.vertices()[v].name + " - " + g.vertices()[arc.to].name);
      } catch (const DivisionByZero&) {
        throw BacklundError(std::string("division by zero in ") + floor + " step on edge " +
                            g.vertices()[v].name + " - " + g.vertices()[arc.to].name);
      }
      queue.push_back(arc.to);
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!upper[v]) throw BacklundError(std::string(floor) + " does not reach vertex " + g.vertices()[v].name);
  }
}

void check_vertical(const QuadGraphB& g, const BulkEquation& eq,
                    const std::vector<std::vector<Arc>>& adj, const FieldAssignment& lower,
                    const FieldAssignment& upper, const Scalar& vertical, const char* floor) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (const Arc& arc : adj[v]) {
      if (arc.to < v) continue;
      Scalar r = eq.eval(*lower[v], *lower[arc.to], *upper[v], *upper[arc.to], g.param(arc.cls), vertical);
      bool zero = r.exact() ? r.is_zero() : r.magnitude() < 1e-9;
      if (!zero) {
        throw VerificationError(std::string("vertical face of ") + floor + " fails on edge " +
                                g.vertices()[v].name + " - " + g.vertices()[arc.to].name);
      }
    }
  }
}

}  // namespace

BacklundResult backlund_transform(const QuadGraphB& g, const BulkEquation& eq,
                                  const BoundaryEquation& beq, const FieldAssignment& ground,
                                  const Scalar& lambda, const Scalar& seed_value, int seed_vertex) {
  if (seed_vertex < 0 || seed_vertex >= g.vertex_count()) throw BacklundError("seed vertex out of range");
  if (static_cast<int>(ground.size()) != g.vertex_count()) throw BacklundError("ground field size mismatch");
  for (const auto& v : ground) {
    if (!v) throw BacklundError("ground field is partial");
  }
  if (!check_solution(g, eq, &beq, ground).ok) throw BacklundError("ground field is not a solution");

  auto adj = edge_lists(g);
  BacklundResult out;

  out.first.assign(g.vertex_count(), std::nullopt);
  out.first[seed_vertex] = seed_value;
  spread(g, eq, adj, ground, out.first, {seed_vertex}, lambda, "first floor");
  check_vertical(g, eq, adj, ground, out.first, lambda, "first floor");
  if (!check_solution(g, eq, &beq, out.first, true).ok) {
    throw VerificationError("first floor fails a bulk face");
  }

  const Scalar sl = beq.sigma(lambda);
  out.top.assign(g.vertex_count(), std::nullopt);
  std::deque<int> seeds;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!g.vertices()[v].boundary) continue;
    try {
      out.top[v] = solve_boundary(beq, BoundarySlot::Z, *ground[v], *out.first[v], lambda);
    } catch (const SingularSolve&) {
      throw BacklundError("degenerate boundary step at " + g.vertices()[v].name);
    } catch (const DivisionByZero&) {
      throw BacklundError("division by zero in boundary step at " + g.vertices()[v].name);
    }
    seeds.push_back(v);
  }
  if (seeds.empty()) throw BacklundError("graph has no boundary vertices");
  spread(g, eq, adj, out.first, out.top, seeds, sl, "top floor");
  check_vertical(g, eq, adj, out.first, out.top, sl, "top floor");
  for (int v : seeds) {
    Scalar r = beq.q(*ground[v], *out.first[v], *out.top[v], lambda);
    if (!(r.exact() ? r.is_zero() : r.magnitude() < 1e-9)) {
      throw VerificationError("boundary triangle fails at " + g.vertices()[v].name);
    }
  }
  SolutionCheck chk = check_solution(g, eq, &beq, out.top);
  if (!chk.ok) {
    throw VerificationError("top floor is not a solution: " + g.describe_face(chk.failing_face));
  }
  return out;
}

}  // namespace qgb
