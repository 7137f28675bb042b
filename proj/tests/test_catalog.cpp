#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "qgb/catalog.hpp"
#include "qgb/sampling.hpp"

using namespace qgb;

namespace {

const Scalar kMu = Scalar::fraction(5, 7);

std::vector<std::string> exact_families() {
  std::vector<std::string> out;
  for (const auto& id : bulk_ids())
    if (id != "Q4") out.push_back(id);
  return out;
}

std::array<Scalar, 4> four(Sampler& s, FieldMode mode) {
  return {s.field(mode), s.field(mode), s.field(mode), s.field(mode)};
}

// Exact zero, or (Q4) tiny against the unit-size sampled values.
bool vanishes(const Scalar& r) { return r.exact() ? r.is_zero() : r.magnitude() < 1e-9; }

}  // namespace

TEST(Catalog, BulkIds) {
  const auto& ids = bulk_ids();
  EXPECT_EQ(ids.size(), 13u);
  for (const auto& id : ids) EXPECT_EQ(bulk_equation(id).id(), id);
  EXPECT_THROW(bulk_equation("Q5"), UnknownId);
  EXPECT_THROW(boundary_row("H1.b9"), UnknownId);
  EXPECT_EQ(bulk_equation("Q4").mode(), FieldMode::ComplexF64);
  EXPECT_EQ(bulk_equation("H3d1").mode(), FieldMode::ExactRational);
}

TEST(Catalog, EvalBulkExamples) {
  auto h1 = bulk_equation("H1");
  EXPECT_EQ(eval_bulk(h1, 0, 2, 1, -2, 3, 1), Scalar(0));
  auto q1 = bulk_equation("Q1d0");
  Scalar c = Scalar::fraction(-4, 9);
  EXPECT_EQ(eval_bulk(q1, c, c, c, c, 3, 5), Scalar(0));
  auto h3 = bulk_equation("H3d0");
  Scalar a = Scalar::fraction(7, 3), b = Scalar::fraction(-2, 5);
  EXPECT_EQ(eval_bulk(h3, 1, 1, 1, 1, a, b), 2 * (a - b));
  EXPECT_THROW(eval_bulk(h1, Scalar::real(0.1), 2, 1, -2, 3, 1), ModeError);
}

TEST(Catalog, SolveVertexExamples) {
  EXPECT_EQ(solve_vertex(bulk_equation("H1"), Corner::U11, {0, 2, 1, 0}, 3, 1), Scalar(-2));
  EXPECT_EQ(solve_vertex(bulk_equation("Q1d0"), Corner::U11, {1, 2, 3, 0}, 2, 3), Scalar(-1));
  EXPECT_THROW(solve_vertex(bulk_equation("H1"), Corner::U11, {0, 4, 4, 0}, 3, 1), SingularSolve);
}

TEST(Catalog, SolveVertexEveryCorner) {
  for (const auto& id : bulk_ids()) {
    auto eq = bulk_equation(id);
    int solved = 0;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Sampler s(11, attempt);
      auto u = four(s, eq.mode());
      Scalar a = s.parameter(eq.mode()), b = s.parameter(eq.mode());
      for (int c = 0; c < 4; ++c) {
        auto v = u;
        try {
          v[c] = solve_vertex(eq, static_cast<Corner>(c), u, a, b);
        } catch (const SingularSolve&) {
          continue;
        } catch (const DivisionByZero&) {
          continue;
        }
        Scalar r = eval_bulk(eq, v[0], v[1], v[2], v[3], a, b);
        EXPECT_TRUE(vanishes(r)) << id << " corner " << c;
        ++solved;
      }
    }
    EXPECT_GT(solved, 100) << id;
  }
}

TEST(Catalog, BulkIsAffineInEachCorner) {
  for (const auto& id : exact_families()) {
    auto eq = bulk_equation(id);
    for (int attempt = 0; attempt < 50; ++attempt) {
      Sampler s(21, attempt);
      auto u = four(s, FieldMode::ExactRational);
      Scalar a = s.parameter(FieldMode::ExactRational), b = s.parameter(FieldMode::ExactRational);
      Scalar h = s.rational();
      for (int c = 0; c < 4; ++c) {
        auto at = [&](int k) {
          auto v = u;
          v[c] += h * k;
          return eval_bulk(eq, v[0], v[1], v[2], v[3], a, b);
        };
        EXPECT_EQ(at(2) - 2 * at(1) + at(0), Scalar(0)) << id << " corner " << c;
      }
    }
  }
}

TEST(Catalog, Q4IsAffineInEachCorner) {
  auto eq = bulk_equation("Q4");
  for (int attempt = 0; attempt < 50; ++attempt) {
    Sampler s(22, attempt);
    auto u = four(s, FieldMode::ComplexF64);
    Scalar a = s.parameter(FieldMode::ComplexF64), b = s.parameter(FieldMode::ComplexF64);
    for (int c = 0; c < 4; ++c) {
      auto at = [&](double k) {
        auto v = u;
        v[c] += Scalar::real(0.5 * k);
        return eval_bulk(eq, v[0], v[1], v[2], v[3], a, b);
      };
      Scalar d2 = at(2) - 2 * at(1) + at(0);
      double scale = std::max({at(0).magnitude(), at(1).magnitude(), at(2).magnitude(), 1.0});
      EXPECT_LT(d2.magnitude() / scale, 1e-12);
    }
  }
}

TEST(Catalog, D4Symmetry) {
  for (const auto& id : bulk_ids()) {
    auto eq = bulk_equation(id);
    const FieldMode mode = eq.mode();
    int checked = 0;
    for (int attempt = 0; attempt < 80 && checked < 50; ++attempt) {
      Sampler s(31, attempt);
      auto u = four(s, mode);
      Scalar a = s.parameter(mode), b = s.parameter(mode);
      try {
        u[3] = solve_vertex(eq, Corner::U11, u, a, b);
      } catch (const SingularSolve&) {
        continue;
      }
      ++checked;
      EXPECT_TRUE(vanishes(eval_bulk(eq, u[0], u[2], u[1], u[3], b, a)))
          << id;
      // Exchanging u00 <-> u11 and u10 <-> u01 is also a symmetry.
      EXPECT_TRUE(vanishes(eval_bulk(eq, u[3], u[2], u[1], u[0], a, b))) << id;
    }
    EXPECT_EQ(checked, 50) << id;
  }
}

TEST(Catalog, BoundaryExamples) {
  Scalar a = Scalar::fraction(9, 4);
  auto trivial = boundary_equation("H1.trivial", kMu);
  EXPECT_EQ(eval_boundary(trivial, 1, 5, 1, a), Scalar(0));
  EXPECT_EQ(solve_boundary(trivial, BoundarySlot::Z, 7, 2, a), Scalar(7));

  auto h1b2 = boundary_equation("H1.b2", Scalar(1));
  EXPECT_EQ(eval_boundary(h1b2, 0, 2, -1, 3), Scalar(0));
  EXPECT_EQ(solve_boundary(h1b2, BoundarySlot::Z, 0, 2, 3), Scalar(-1));

  auto q1b1 = boundary_equation("Q1d0.b1", kMu);
  Scalar x = Scalar::fraction(-3, 11);
  EXPECT_EQ(eval_boundary(q1b1, x, x, x, a), Scalar(0));

  // q = y(x+z) with y = 0
  auto h1b1 = boundary_equation("H1.b1", kMu);
  EXPECT_THROW(solve_boundary(h1b1, BoundarySlot::Z, 3, 0, a), SingularSolve);
}

TEST(Catalog, Q2HasOnlyTheTrivialRow) {
  EXPECT_EQ(boundary_ids("Q2"), std::vector<std::string>{"Q2.trivial"});
}

TEST(Catalog, EveryFamilyHasTrivialRow) {
  for (const auto& id : bulk_ids()) {
    auto rows = boundary_ids(id);
    EXPECT_NE(std::find(rows.begin(), rows.end(), id + ".trivial"), rows.end()) << id;
    for (const auto& r : rows) EXPECT_EQ(family_of(r), id);
  }
  const auto ids = boundary_ids();
  std::set<std::string> all(ids.begin(), ids.end());
  EXPECT_EQ(all.size(), ids.size());
  EXPECT_EQ(all.size(), 64u);
}

TEST(Catalog, SigmaIsAnInvolution) {
  for (const auto& id : boundary_ids()) {
    auto beq = boundary_equation(id, kMu);
    if (beq.bulk().mode() != FieldMode::ExactRational) continue;
    for (int attempt = 0; attempt < 50; ++attempt) {
      Sampler s(41, attempt);
      Scalar a = s.parameter(FieldMode::ExactRational);
      try {
        EXPECT_EQ(beq.sigma(beq.sigma(a)), a) << id;
      } catch (const DivisionByZero&) {
      }
    }
  }
}

TEST(Catalog, BoundaryIsAffineInXAndZ) {
  for (const auto& id : boundary_ids()) {
    auto beq = boundary_equation(id, kMu);
    if (beq.bulk().mode() != FieldMode::ExactRational) continue;
    for (int attempt = 0; attempt < 30; ++attempt) {
      Sampler s(51, attempt);
      Scalar x = s.rational(), y = s.rational(), z = s.rational(), a = s.parameter(FieldMode::ExactRational);
      Scalar h = s.rational();
      try {
        auto qx = [&](int k) { return beq.q(x + h * k, y, z, a); };
        auto qz = [&](int k) { return beq.q(x, y, z + h * k, a); };
        EXPECT_EQ(qx(2) - 2 * qx(1) + qx(0), Scalar(0)) << id;
        EXPECT_EQ(qz(2) - 2 * qz(1) + qz(0), Scalar(0)) << id;
      } catch (const DivisionByZero&) {
      }
    }
  }
}

TEST(Catalog, XZSymmetryUnderSigma) {
  for (const auto& id : boundary_ids()) {
    auto beq = boundary_equation(id, kMu);
    const FieldMode mode = beq.bulk().mode();
    int checked = 0;
    for (int attempt = 0; attempt < 100 && checked < 40; ++attempt) {
      Sampler s(61, attempt);
      Scalar x = s.field(mode), y = s.field(mode), a = s.parameter(mode);
      Scalar z;
      try {
        z = solve_boundary(beq, BoundarySlot::Z, x, y, a);
        Scalar back = eval_boundary(beq, z, y, x, beq.sigma(a));
        EXPECT_TRUE(vanishes(back)) << id;
        ++checked;
      } catch (const SingularSolve&) {
      } catch (const DivisionByZero&) {
      }
    }
    EXPECT_GE(checked, 20) << id;
  }
}

TEST(Catalog, SolveBoundaryBothSlots) {
  for (const auto& id : boundary_ids()) {
    auto beq = boundary_equation(id, kMu);
    const FieldMode mode = beq.bulk().mode();
    if (mode != FieldMode::ExactRational) continue;
    for (int attempt = 0; attempt < 20; ++attempt) {
      Sampler s(71, attempt);
      Scalar other = s.rational(), y = s.rational(), a = s.parameter(mode);
      try {
        Scalar x = solve_boundary(beq, BoundarySlot::X, other, y, a);
        EXPECT_EQ(eval_boundary(beq, x, y, other, a), Scalar(0)) << id;
      } catch (const SingularSolve&) {
      } catch (const DivisionByZero&) {
      }
    }
  }
}

TEST(Catalog, SigmaAndQShiftsChangeTheEquation) {
  auto beq = boundary_equation("H1.b1", kMu);
  Scalar a(3);
  EXPECT_EQ(beq.with_sigma_shift(1).sigma(a), beq.sigma(a) + 1);
  EXPECT_EQ(beq.with_q_shift(1).q(1, 2, 3, a), beq.q(1, 2, 3, a) + 1);
}

TEST(Catalog, ThreeLegFormQ1) {
  auto eq = bulk_equation("Q1d0");
  ThreeLegForm t = three_leg_form(eq);
  EXPECT_EQ(t.mode, LegMode::Additive);
  int checked = 0;
  for (int attempt = 0; attempt < 150 && checked < 100; ++attempt) {
    Sampler s(81, attempt);
    Scalar x = s.rational(), u = s.rational(), v = s.rational();
    Scalar a = s.rational(), b = s.rational();
    try {
      Scalar y = solve_vertex(eq, Corner::U11, {x, u, v, 0}, a, b);
      EXPECT_EQ(t.psi(x, u, a) - t.psi(x, v, b) - t.phi(x, y, a, b), Scalar(0));
      ++checked;
    } catch (const SingularSolve&) {
    } catch (const DivisionByZero&) {
    }
  }
  EXPECT_EQ(checked, 100);
  EXPECT_THROW(three_leg_form(bulk_equation("H1")), DomainError);
}

TEST(Catalog, MutatedBulkOffset) {
  auto h1 = bulk_equation("H1");
  auto m = h1.with_offset(1);
  EXPECT_TRUE(m.mutated());
  EXPECT_EQ(eval_bulk(m, 0, 2, 1, -2, 3, 1), Scalar(1));
}
