#include "qgb/lattice.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace qgb {

int QuadGraphB::add_vertex(Color color, bool boundary, std::string name) {
  if (name.empty()) name = "v" + std::to_string(vertices_.size());
  vertices_.push_back({color, boundary, std::move(name)});
  return static_cast<int>(vertices_.size()) - 1;
}

int QuadGraphB::add_class(std::string name, Scalar value) {
  classes_.push_back({std::move(name), std::move(value), -1});
  return static_cast<int>(classes_.size()) - 1;
}

void QuadGraphB::pair_classes(int a, int b) {
  classes_.at(a).partner = b;
  classes_.at(b).partner = a;
}

int QuadGraphB::add_quad(int v00, int v10, int v01, int v11, int cls_a, int cls_b) {
  for (int v : {v00, v10, v01, v11}) {
    if (v < 0 || v >= vertex_count()) throw DomainError("quad refers to an unknown vertex");
  }
  faces_.push_back({FaceKind::Quad, {v00, v10, v01, v11}, cls_a, cls_b});
  return face_count() - 1;
}

int QuadGraphB::add_triangle(int x, int y, int z, int cls_a) {
  for (int v : {x, y, z}) {
    if (v < 0 || v >= vertex_count()) throw DomainError("triangle refers to an unknown vertex");
  }
  int partner = cls_a >= 0 && cls_a < static_cast<int>(classes_.size()) ? classes_[cls_a].partner : -1;
  faces_.push_back({FaceKind::Triangle, {x, y, z, -1}, cls_a, partner});
  return face_count() - 1;
}

std::vector<std::string> QuadGraphB::structure_errors() const {
  std::vector<std::string> errs;
  for (int f = 0; f < face_count(); ++f) {
    const Face& face = faces_[f];
    if (face.kind == FaceKind::Triangle) {
      const auto& x = vertices_[face.v[0]];
      const auto& y = vertices_[face.v[1]];
      const auto& z = vertices_[face.v[2]];
      if (!x.boundary || !z.boundary || y.boundary) {
        errs.push_back("face " + std::to_string(f) + ": triangle needs two boundary vertices and one interior");
      }
      if (x.color != Color::Black || z.color != Color::Black || y.color != Color::White) {
        errs.push_back("face " + std::to_string(f) + ": triangle needs black ends and a white apex");
      }
    } else {
      const auto& c = face.v;
      auto col = [&](int i) { return vertices_[c[i]].color; };
      if (col(0) != col(3) || col(1) != col(2) || col(0) == col(1)) {
        errs.push_back("face " + std::to_string(f) + ": quad edges are not bipartite by colour");
      }
    }
  }
  return errs;
}

std::string QuadGraphB::describe_face(int face) const {
  const Face& f = faces_.at(face);
  std::string s = (f.kind == FaceKind::Quad ? "quad " : "triangle ") + std::to_string(face) + " (";
  int n = f.kind == FaceKind::Quad ? 4 : 3;
  for (int i = 0; i < n; ++i) {
    if (i) s += ", ";
    s += vertices_[f.v[i]].name;
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// labelling

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::pair<int, int> edge_key(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

}  // namespace

LabellingResult validate_labelling(const QuadGraphB& g) {
  LabellingResult res;
  std::map<std::pair<int, int>, int> edge_id;
  auto edge = [&](int u, int v) {
    auto key = edge_key(u, v);
    auto it = edge_id.find(key);
    if (it != edge_id.end()) return it->second;
    int id = static_cast<int>(edge_id.size());
    edge_id.emplace(key, id);
    return id;
  };
  for (const Face& f : g.faces()) {
    if (f.kind == FaceKind::Quad) {
      edge(f.v[0], f.v[1]);
      edge(f.v[2], f.v[3]);
      edge(f.v[0], f.v[2]);
      edge(f.v[1], f.v[3]);
    } else {
      edge(f.v[0], f.v[1]);
      edge(f.v[1], f.v[2]);
    }
  }
  UnionFind uf(static_cast<int>(edge_id.size()));
  for (const Face& f : g.faces()) {
    if (f.kind != FaceKind::Quad) continue;
    uf.unite(edge(f.v[0], f.v[1]), edge(f.v[2], f.v[3]));
    uf.unite(edge(f.v[0], f.v[2]), edge(f.v[1], f.v[3]));
  }

  // partner constraints between edge classes, one per triangle
  struct Arc {
    int to;
    int face;
  };
  std::map<int, std::vector<Arc>> adj;
  for (int fi = 0; fi < g.face_count(); ++fi) {
    const Face& f = g.faces()[fi];
    if (f.kind != FaceKind::Triangle) continue;
    int c1 = uf.find(edge(f.v[0], f.v[1]));
    int c2 = uf.find(edge(f.v[1], f.v[2]));
    if (c1 == c2) {
      res.conflict = {fi};
      res.message = "triangle " + std::to_string(fi) +
                    " needs one class to be its own partner";
      return res;
    }
    adj[c1].push_back({c2, fi});
    adj[c2].push_back({c1, fi});
  }

  std::map<int, int> colour, parent_node, parent_face, depth, component;
  int next_component = 0;
  for (const auto& [start, unused] : adj) {
    (void)unused;
    if (colour.count(start)) continue;
    int comp = next_component++;
    colour[start] = 0;
    depth[start] = 0;
    parent_node[start] = -1;
    parent_face[start] = -1;
    component[start] = comp;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (const Arc& arc : adj[u]) {
        if (!colour.count(arc.to)) {
          colour[arc.to] = 1 - colour[u];
          depth[arc.to] = depth[u] + 1;
          parent_node[arc.to] = u;
          parent_face[arc.to] = arc.face;
          component[arc.to] = comp;
          queue.push_back(arc.to);
        } else if (colour[arc.to] == colour[u]) {
          // odd cycle: climb both BFS paths to their meeting point
          std::vector<int> left{arc.face}, right;
          int p = u, q = arc.to;
          while (p != q) {
            if (depth[p] >= depth[q]) {
              left.push_back(parent_face[p]);
              p = parent_node[p];
            } else {
              right.push_back(parent_face[q]);
              q = parent_node[q];
            }
          }
          std::reverse(right.begin(), right.end());
          left.insert(left.end(), right.begin(), right.end());
          res.conflict = left;
          res.message = "odd cycle of " + std::to_string(left.size()) + " triangle constraints";
          return res;
        }
      }
    }
  }

  res.admissible = true;
  std::map<int, std::string> root_label;
  int free_count = 0;
  for (const auto& [key, id] : edge_id) {
    int r = uf.find(id);
    if (!root_label.count(r)) {
      if (colour.count(r)) {
        std::string base = "a" + std::to_string(component[r]);
        root_label[r] = colour[r] == 0 ? base : "s(" + base + ")";
      } else {
        root_label[r] = "b" + std::to_string(free_count++);
      }
    }
    res.witness[key] = root_label[r];
  }
  res.message = "admissible";
  return res;
}

// ---------------------------------------------------------------------------
// builders

int Strip::vertex(int t, int d) const {
  auto it = at.find({t, d});
  if (it == at.end()) throw DomainError("strip has no vertex at t=" + std::to_string(t) + ", d=" + std::to_string(d));
  return it->second;
}

std::vector<int> Strip::initial_vertices() const {
  std::vector<int> out;
  for (const auto& [td, v] : at) {
    auto [t, d] = td;
    if (t <= 0 || d == 2 * width) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Strip make_strip(int width, int steps, const Scalar& a, const BoundaryEquation& beq) {
  if (width < 1 || steps < 1) throw DomainError("strip width and steps must be >= 1");
  Strip s;
  s.width = width;
  s.steps = steps;
  QuadGraphB& g = s.graph;
  int ca = g.add_class("a", a);
  int cb = g.add_class("s(a)", beq.sigma(a));
  g.pair_classes(ca, cb);
  for (int t = -1; t <= 2 * steps; ++t) {
    for (int d = 1; d <= 2 * width; ++d) {
      if (((t - d) % 2 + 2) % 2 != 0) continue;
      if (t == 2 * steps && d == 2 * width) continue;  // would lie on no face
      Color c = d % 2 == 0 ? Color::White : Color::Black;
      int i = (t + d) / 2, j = (t - d) / 2;
      std::string name = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      s.at[{t, d}] = g.add_vertex(c, d == 1, name);
    }
  }
  // quad with corner (t, d): (t,d), (t+1,d+1), (t+1,d-1), (t+2,d)
  for (int t = -1; t <= 2 * steps - 2; ++t) {
    for (int d = 1; d <= 2 * width - 1; ++d) {
      if (((t - d) % 2 + 2) % 2 != 0) continue;
      if (d == 1) {
        g.add_triangle(s.at[{t, 1}], s.at[{t + 1, 2}], s.at[{t + 2, 1}], ca);
      } else {
        g.add_quad(s.at[{t, d}], s.at[{t + 1, d + 1}], s.at[{t + 1, d - 1}], s.at[{t + 2, d}], ca,
                   cb);
      }
    }
  }
  return s;
}

std::vector<int> Grid::staircase() const {
  std::vector<int> out;
  for (int i = 0; i <= n; ++i) out.push_back(vertex(i, 0));
  for (int j = 1; j <= m; ++j) out.push_back(vertex(0, j));
  return out;
}

Grid make_grid(int n, int m, const Scalar& a, const Scalar& b) {
  if (n < 1 || m < 1) throw DomainError("grid needs at least one quad");
  Grid gr;
  gr.n = n;
  gr.m = m;
  QuadGraphB& g = gr.graph;
  int ca = g.add_class("a", a);
  int cb = g.add_class("b", b);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= m; ++j) {
      gr.at[{i, j}] = g.add_vertex((i + j) % 2 == 0 ? Color::Black : Color::White, false,
                                   "(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      g.add_quad(gr.vertex(i, j), gr.vertex(i + 1, j), gr.vertex(i, j + 1), gr.vertex(i + 1, j + 1),
                 ca, cb);
    }
  }
  return gr;
}

QuadGraphB make_cube(const Scalar& a, const Scalar& b, const Scalar& c) {
  QuadGraphB g;
  int ca = g.add_class("a", a), cb = g.add_class("b", b), cc = g.add_class("c", c);
  std::array<int, 8> v{};
  for (int k = 0; k < 8; ++k) {
    int parity = (k & 1) + ((k >> 1) & 1) + ((k >> 2) & 1);
    std::string name = "u" + std::to_string(k & 1) + std::to_string((k >> 1) & 1) +
                       std::to_string((k >> 2) & 1);
    v[k] = g.add_vertex(parity % 2 == 0 ? Color::Black : Color::White, false, name);
  }
  g.add_quad(v[0], v[1], v[2], v[3], ca, cb);
  g.add_quad(v[0], v[1], v[4], v[5], ca, cc);
  g.add_quad(v[0], v[2], v[4], v[6], cb, cc);
  g.add_quad(v[1], v[3], v[5], v[7], cb, cc);
  g.add_quad(v[2], v[3], v[6], v[7], ca, cc);
  g.add_quad(v[4], v[5], v[6], v[7], ca, cb);
  return g;
}

QuadGraphB make_half_dodecahedron(const Scalar& a, const Scalar& b, const BoundaryEquation& beq) {
  QuadGraphB g;
  int ca = g.add_class("a", a), csa = g.add_class("s(a)", beq.sigma(a));
  int cb = g.add_class("b", b), csb = g.add_class("s(b)", beq.sigma(b));
  g.pair_classes(ca, csa);
  g.pair_classes(cb, csb);
  int x = g.add_vertex(Color::Black, true, "x");
  int x1 = g.add_vertex(Color::White, false, "x1");
  int x2 = g.add_vertex(Color::White, false, "x2");
  int y1 = g.add_vertex(Color::Black, false, "y1");
  int y2 = g.add_vertex(Color::Black, true, "y2");
  int y3 = g.add_vertex(Color::Black, true, "y3");
  int z1 = g.add_vertex(Color::White, false, "z1");
  int z2 = g.add_vertex(Color::White, false, "z2");
  int w = g.add_vertex(Color::Black, true, "w");
  g.add_quad(y1, x2, x1, x, ca, cb);
  g.add_triangle(x, x1, y2, ca);
  g.add_triangle(x, x2, y3, cb);
  g.add_quad(y1, z1, x2, y3, csb, ca);
  g.add_quad(y1, z2, x1, y2, csa, cb);
  g.add_triangle(y2, z2, w, cb);
  g.add_triangle(y3, z1, w, ca);
  g.add_quad(y1, z1, z2, w, csb, csa);
  return g;
}

QuadGraphB make_triangle_fan() {
  QuadGraphB g;
  // labels are placeholders: admissibility ignores them
  int c0 = g.add_class("c0", Scalar(1));
  int o = g.add_vertex(Color::Black, false, "o");
  int w1 = g.add_vertex(Color::White, false, "w1");
  int w2 = g.add_vertex(Color::White, false, "w2");
  int w3 = g.add_vertex(Color::White, false, "w3");
  int b12 = g.add_vertex(Color::Black, true, "b12");
  int b23 = g.add_vertex(Color::Black, true, "b23");
  int b31 = g.add_vertex(Color::Black, true, "b31");
  g.add_quad(o, w1, w2, b12, c0, c0);
  g.add_quad(o, w2, w3, b23, c0, c0);
  g.add_quad(o, w3, w1, b31, c0, c0);
  g.add_triangle(b31, w1, b12, c0);
  g.add_triangle(b12, w2, b23, c0);
  g.add_triangle(b23, w3, b31, c0);
  return g;
}

// ---------------------------------------------------------------------------
// propagation

namespace {

int face_arity(const Face& f) { return f.kind == FaceKind::Quad ? 4 : 3; }

// Index inside the face that may be solved for, or -1.
bool solvable_slot(const Face& f, int slot) { return f.kind == FaceKind::Quad || slot != 1; }

}  // namespace

std::vector<PropagationStep> plan_propagation(const QuadGraphB& g, const std::vector<bool>& known_in,
                                              FaceOrder order) {
  std::vector<bool> known = known_in;
  known.resize(g.vertex_count(), false);
  std::vector<std::vector<int>> faces_of(g.vertex_count());
  std::vector<int> unknown(g.face_count(), 0);
  for (int f = 0; f < g.face_count(); ++f) {
    const Face& face = g.faces()[f];
    for (int i = 0; i < face_arity(face); ++i) {
      faces_of[face.v[i]].push_back(f);
      if (!known[face.v[i]]) ++unknown[f];
    }
  }
  auto ready = [&](int f) {
    if (unknown[f] != 1) return false;
    const Face& face = g.faces()[f];
    for (int i = 0; i < face_arity(face); ++i) {
      if (!known[face.v[i]]) return solvable_slot(face, i);
    }
    return false;
  };
  std::set<int> queue;
  for (int f = 0; f < g.face_count(); ++f) {
    if (ready(f)) queue.insert(f);
  }
  std::vector<PropagationStep> steps;
  while (!queue.empty()) {
    int f = order == FaceOrder::Lexicographic ? *queue.begin() : *queue.rbegin();
    queue.erase(f);
    if (!ready(f)) continue;
    const Face& face = g.faces()[f];
    int target = -1;
    for (int i = 0; i < face_arity(face); ++i) {
      if (!known[face.v[i]]) target = face.v[i];
    }
    known[target] = true;
    steps.push_back({f, target});
    for (int nf : faces_of[target]) {
      --unknown[nf];
      if (ready(nf)) {
        queue.insert(nf);
      } else {
        queue.erase(nf);
      }
    }
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!known[v]) {
      throw IllPosedError("vertex " + g.vertices()[v].name + " is not determined by the initial data", v);
    }
  }
  return steps;
}

Scalar face_residual(const QuadGraphB& g, const BulkEquation& eq, const BoundaryEquation* beq,
                     const FieldAssignment& field, int face) {
  const Face& f = g.faces().at(face);
  auto val = [&](int slot) -> const Scalar& {
    const auto& v = field.at(f.v[slot]);
    if (!v) throw DomainError("face " + std::to_string(face) + " has an unassigned vertex");
    return *v;
  };
  if (f.kind == FaceKind::Quad) {
    return eq.eval(val(0), val(1), val(2), val(3), g.param(f.cls_a), g.param(f.cls_b));
  }
  if (!beq) throw DomainError("triangle faces need a boundary equation");
  return beq->q(val(0), val(1), val(2), g.param(f.cls_a));
}

SolutionCheck check_solution(const QuadGraphB& g, const BulkEquation& eq, const BoundaryEquation* beq,
                             const FieldAssignment& field, bool quads_only) {
  SolutionCheck out;
  for (int f = 0; f < g.face_count(); ++f) {
    if (quads_only && g.faces()[f].kind != FaceKind::Quad) continue;
    Scalar r = face_residual(g, eq, beq, field, f);
    // residuals of complex faces are compared on the scale of their vertices
    bool zero = r.exact() ? r.is_zero() : r.magnitude() < 1e-9;
    out.residual.observe(discrepancy(r, Scalar::zero(r.mode())));
    ++out.faces_checked;
    if (!zero && out.ok) {
      out.ok = false;
      out.failing_face = f;
    }
  }
  return out;
}

FieldAssignment propagate(const QuadGraphB& g, const BulkEquation& eq, const BoundaryEquation* beq,
                          const FieldAssignment& initial, FaceOrder order) {
  if (static_cast<int>(initial.size()) > g.vertex_count()) {
    throw DomainError("initial data has more entries than the graph has vertices");
  }
  FieldAssignment field = initial;
  field.resize(g.vertex_count());
  std::vector<bool> known(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) known[v] = field[v].has_value();
  auto plan = plan_propagation(g, known, order);

  for (const auto& step : plan) {
    const Face& f = g.faces()[step.face];
    try {
      if (f.kind == FaceKind::Quad) {
        std::array<Scalar, 4> u;
        int slot = -1;
        for (int i = 0; i < 4; ++i) {
          if (f.v[i] == step.vertex) {
            slot = i;
            u[i] = Scalar::zero(eq.mode());
          } else {
            u[i] = *field[f.v[i]];
          }
        }
        field[step.vertex] = solve_vertex(eq, static_cast<Corner>(slot), u, g.param(f.cls_a),
                                          g.param(f.cls_b));
      } else {
        if (!beq) throw DomainError("triangle faces need a boundary equation");
        const Scalar& y = *field[f.v[1]];
        const Scalar& a = g.param(f.cls_a);
        if (step.vertex == f.v[2]) {
          field[step.vertex] = solve_boundary(*beq, BoundarySlot::Z, *field[f.v[0]], y, a);
        } else {
          field[step.vertex] = solve_boundary(*beq, BoundarySlot::X, *field[f.v[2]], y, a);
        }
      }
    } catch (const SingularSolve& e) {
      throw PropagationError("singular solve at " + g.describe_face(step.face) + ": " + e.what(),
                             step.face);
    } catch (const DivisionByZero& e) {
      throw PropagationError("division by zero at " + g.describe_face(step.face), step.face);
    }
  }

  for (int f = 0; f < g.face_count(); ++f) {
    Scalar r = face_residual(g, eq, beq, field, f);
    bool zero = r.exact() ? r.is_zero() : r.magnitude() < 1e-9;
    if (!zero) {
      throw ContradictionError("initial data over-determine " + g.describe_face(f) +
                                   " inconsistently (residual " + r.to_string() + ")",
                               f);
    }
  }
  return field;
}

}  // namespace qgb
