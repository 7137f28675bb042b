#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgb/catalog.hpp"
#include "qgb/report.hpp"

namespace qgb {

enum class Color { Black, White };
enum class FaceKind { Quad, Triangle };

struct Vertex {
  Color color = Color::Black;
  bool boundary = false;
  std::string name;
};

/// Quads list (v00, v10, v01, v11): edges v00-v10 and v01-v11 carry cls_a,
/// edges v00-v01 and v10-v11 carry cls_b. Triangles list (x, y, z, -1) with
/// x, z on the boundary; x-y carries cls_a and y-z carries its partner.
struct Face {
  FaceKind kind = FaceKind::Quad;
  std::array<int, 4> v{-1, -1, -1, -1};
  int cls_a = -1;
  int cls_b = -1;
};

struct LabelClass {
  std::string name;
  Scalar value;
  int partner = -1;
};

class QuadGraphB {
 public:
  int add_vertex(Color color, bool boundary, std::string name = {});
  int add_class(std::string name, Scalar value);
  /// Declares b = sigma(a) (and a = sigma(b)).
  void pair_classes(int a, int b);
  int add_quad(int v00, int v10, int v01, int v11, int cls_a, int cls_b);
  int add_triangle(int x, int y, int z, int cls_a);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<LabelClass>& classes() const { return classes_; }
  std::vector<LabelClass>& classes() { return classes_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  const Scalar& param(int cls) const { return classes_.at(cls).value; }

  /// Violations of the structural rules (triangle shape, bipartite colours).
  std::vector<std::string> structure_errors() const;
  std::string describe_face(int face) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Face> faces_;
  std::vector<LabelClass> classes_;
};

using FieldAssignment = std::vector<std::optional<Scalar>>;

struct LabellingResult {
  bool admissible = false;
  /// Per undirected edge (sorted vertex pair): the assigned label, e.g. "a0"
  /// or "s(a0)"; empty when inadmissible.
  std::map<std::pair<int, int>, std::string> witness;
  /// Triangle faces forming an odd constraint cycle when inadmissible.
  std::vector<int> conflict;
  std::string message;
};

/// Decides whether classes can be assigned so that opposite quad edges agree
/// and each triangle carries (a, sigma(a)) on its two edges.
LabellingResult validate_labelling(const QuadGraphB& g);

// ---- builders

/// Strip of the Z^2 half-plane in light-cone coordinates t = i + j, d = i - j.
/// Vertices: -1 <= t <= 2*steps, 1 <= d <= 2*width, t = d mod 2. Whites sit at
/// even d, boundary blacks at d = 1. i-edges carry class 0 (value a), j-edges
/// class 1 (value sigma(a)).
struct Strip {
  QuadGraphB graph;
  int width = 0;
  int steps = 0;
  std::map<std::pair<int, int>, int> at;  // (t, d) -> vertex

  int vertex(int t, int d) const;
  bool has(int t, int d) const { return at.count({t, d}) != 0; }
  /// Vertices on t = -1 and t = 0 plus the Dirichlet column d = 2*width.
  std::vector<int> initial_vertices() const;
};

Strip make_strip(int width, int steps, const Scalar& a, const BoundaryEquation& beq);

struct Grid {
  QuadGraphB graph;
  int n = 0, m = 0;
  std::map<std::pair<int, int>, int> at;  // (i, j) -> vertex
  int vertex(int i, int j) const { return at.at({i, j}); }
  /// Staircase data: the row j = 0 and the column i = 0.
  std::vector<int> staircase() const;
};

/// n x m quads of Z^2, i-edges class 0 (value a), j-edges class 1 (value b).
Grid make_grid(int n, int m, const Scalar& a, const Scalar& b);

/// The elementary cube (no boundary); classes a, b, c.
QuadGraphB make_cube(const Scalar& a, const Scalar& b, const Scalar& c);
/// Half rhombic dodecahedron: four quads and four triangles.
QuadGraphB make_half_dodecahedron(const Scalar& a, const Scalar& b, const BoundaryEquation& beq);
/// Three quads and three triangles fanned around one interior black vertex.
QuadGraphB make_triangle_fan();

// ---- propagation

enum class FaceOrder { Lexicographic, Reversed };

struct PropagationStep {
  int face;
  int vertex;
};

/// Dry run: the sequence of single-vertex solves that determines every
/// unknown vertex from `known`. Throws IllPosedError naming a vertex left
/// undetermined.
std::vector<PropagationStep> plan_propagation(const QuadGraphB& g, const std::vector<bool>& known,
                                              FaceOrder order = FaceOrder::Lexicographic);

/// Fills every vertex from the initial data, then re-checks all faces.
/// Errors: PropagationError (face id) on singular solves, IllPosedError,
/// ContradictionError on over-determined faces that disagree.
FieldAssignment propagate(const QuadGraphB& g, const BulkEquation& eq,
                          const BoundaryEquation* beq, const FieldAssignment& initial,
                          FaceOrder order = FaceOrder::Lexicographic);

struct SolutionCheck {
  bool ok = true;
  int failing_face = -1;
  int faces_checked = 0;
  Residual residual;
};

Scalar face_residual(const QuadGraphB& g, const BulkEquation& eq, const BoundaryEquation* beq,
                     const FieldAssignment& field, int face);
SolutionCheck check_solution(const QuadGraphB& g, const BulkEquation& eq,
                             const BoundaryEquation* beq, const FieldAssignment& field,
                             bool quads_only = false);

// ---- JSON

Json graph_to_json(const QuadGraphB& g);
QuadGraphB graph_from_json(const Json& j);
Json field_to_json(const QuadGraphB& g, const FieldAssignment& field);
FieldAssignment field_from_json(const QuadGraphB& g, const Json& j, FieldMode mode);

/// A self-contained propagation input: graph, equations and initial data.
struct PropagationProblem {
  QuadGraphB graph;
  std::string family;
  std::string row;  // empty when the graph has no triangles
  Scalar mu;
  FieldAssignment initial;
};

PropagationProblem problem_from_json(const Json& j);
Json problem_to_json(const PropagationProblem& p);

}  // namespace qgb
