#include <gtest/gtest.h>

#include "qgb/consistency.hpp"
#include "qgb/sampling.hpp"

using namespace qgb;

namespace {
const Scalar kMu = Scalar::fraction(5, 7);
}

class CubeAllFamilies : public ::testing::TestWithParam<std::string> {};

TEST_P(CubeAllFamilies, Passes) {
  auto eq = bulk_equation(GetParam());
  ConsistencyReport r = check_cube(eq, 100, 1);
  EXPECT_TRUE(r.passed) << r.to_json().dump();
  EXPECT_EQ(r.samples, 100);
  if (eq.mode() == FieldMode::ExactRational) EXPECT_TRUE(r.residual.is_zero());
}

TEST_P(CubeAllFamilies, MutatedFaceFails) {
  auto eq = bulk_equation(GetParam());
  CubeOptions opt;
  opt.mutate_face = 0;
  ConsistencyReport r = check_cube(eq, 10, 1, opt);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.first_failure.is_null());
}

INSTANTIATE_TEST_SUITE_P(Families, CubeAllFamilies, ::testing::ValuesIn(bulk_ids()));

TEST(Cube, Deterministic) {
  auto eq = bulk_equation("Q3d1");
  EXPECT_EQ(check_cube(eq, 30, 9).to_json().dump(), check_cube(eq, 30, 9).to_json().dump());
}

TEST(Dodeca, TrivialH1TraceCollapses) {
  auto eq = bulk_equation("H1");
  auto beq = boundary_equation("H1.trivial", kMu);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Sampler s(5, attempt);
    DodecaSample d{s.rational(), s.rational(), s.rational(), s.rational(), s.rational()};
    if (d.x1 == d.x2 || d.a == d.b) continue;
    DodecaTrace t = trace_half_dodecahedron(eq, beq, d);
    EXPECT_EQ(t.y2, d.x);
    EXPECT_EQ(t.y3, d.x);
    EXPECT_EQ(t.z1, d.x1);
    EXPECT_EQ(t.z2, d.x2);
    EXPECT_EQ(t.w1, d.x);
    EXPECT_EQ(t.w2, d.x);
    EXPECT_EQ(t.w3, d.x);
  }
}

TEST(Dodeca, Q1RowOneRoutesAgree) {
  auto eq = bulk_equation("Q1d0");
  auto beq = boundary_equation("Q1d0.b1", kMu);
  int checked = 0;
  for (int attempt = 0; attempt < 30; ++attempt) {
    Sampler s(6, attempt);
    DodecaSample d{s.rational(), s.rational(), s.rational(), s.rational(), s.rational()};
    try {
      DodecaTrace t = trace_half_dodecahedron(eq, beq, d);
      EXPECT_EQ(t.sigma_a, kMu * kMu / d.a);
      EXPECT_EQ(t.w1, t.w2);
      EXPECT_EQ(t.w2, t.w3);
      ++checked;
    } catch (const SingularSample&) {
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Dodeca, ShiftedSigmaGivesUnequalRoutes) {
  auto eq = bulk_equation("H1");
  auto beq = boundary_equation("H1.b2", kMu).with_sigma_shift(1);
  Sampler s(7, 0);
  DodecaSample d{s.rational(), s.rational(), s.rational(), s.rational(), s.rational()};
  DodecaTrace t = trace_half_dodecahedron(eq, beq, d);
  EXPECT_FALSE(t.w1 == t.w2 && t.w2 == t.w3);
}

// q = y(x+z) does not involve mu, so sigma(a) = -a + 2mu + 1 is the same row at mu + 1/2.
TEST(Dodeca, ShiftedSigmaOnMuFreeRowIsAReparametrisation) {
  auto eq = bulk_equation("H1");
  auto shifted = boundary_equation("H1.b1", kMu).with_sigma_shift(1);
  auto moved = boundary_equation("H1.b1", kMu + Scalar::fraction(1, 2));
  for (int attempt = 0; attempt < 10; ++attempt) {
    Sampler s(8, attempt);
    DodecaSample d{s.rational(), s.rational(), s.rational(), s.rational(), s.rational()};
    EXPECT_EQ(shifted.sigma(d.a), moved.sigma(d.a));
    try {
      DodecaTrace t = trace_half_dodecahedron(eq, shifted, d);
      EXPECT_EQ(t.w1, t.w2);
      EXPECT_EQ(t.w2, t.w3);
    } catch (const SingularSample&) {
    }
  }
}

class BoundaryAllRows : public ::testing::TestWithParam<std::string> {};

TEST_P(BoundaryAllRows, Passes) {
  const std::string id = GetParam();
  auto beq = boundary_equation(id, kMu);
  ConsistencyReport r = check_boundary_consistency(beq.bulk(), beq, 100, 1);
  EXPECT_TRUE(r.passed) << r.to_json().dump();
  if (beq.bulk().mode() == FieldMode::ExactRational) EXPECT_TRUE(r.residual.is_zero());
}

TEST_P(BoundaryAllRows, QShiftFails) {
  auto beq = boundary_equation(GetParam(), kMu);
  EXPECT_FALSE(check_boundary_consistency(beq.bulk(), beq.with_q_shift(1), 10, 1).passed);
}

TEST_P(BoundaryAllRows, FoldPasses) {
  auto beq = boundary_equation(GetParam(), kMu);
  if (!beq.has_k()) GTEST_SKIP() << "no folding function listed";
  FoldReport r = check_fold(beq.bulk(), beq, 100, 1);
  EXPECT_TRUE(r.passed) << r.to_json().dump();
}

INSTANTIATE_TEST_SUITE_P(Rows, BoundaryAllRows, ::testing::ValuesIn(boundary_ids()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s)
                             if (!isalnum(static_cast<unsigned char>(c))) c = '_';
                           if (s.back() == '_') s += info.param.back() == '+' ? "plus" : "minus";
                           return s;
                         });

TEST(Boundary, SigmaShiftFailsForParameterDependentRows) {
  for (const char* id : {"H1.b2", "Q1d0.b1", "Q1d0.b2", "Q3d0.b2+", "A1d0.b1", "H3d1.b2+"}) {
    auto beq = boundary_equation(id, kMu);
    EXPECT_FALSE(check_boundary_consistency(beq.bulk(), beq.with_sigma_shift(1), 10, 1).passed)
        << id;
  }
}

TEST(Boundary, MismatchedPairingFails) {
  auto beq = boundary_equation("Q1d0.b1", kMu);
  EXPECT_FALSE(check_boundary_consistency(bulk_equation("H1"), beq, 10, 1).passed);
}

TEST(Boundary, Deterministic) {
  auto beq = boundary_equation("A1d1.b1+", kMu);
  EXPECT_EQ(check_boundary_consistency(beq.bulk(), beq, 40, 3).to_json().dump(),
            check_boundary_consistency(beq.bulk(), beq, 40, 3).to_json().dump());
}

TEST(Fold, H1RowOneClosedForm) {
  auto eq = bulk_equation("H1");
  auto beq = boundary_equation("H1.b1", kMu);
  for (int attempt = 0; attempt < 30; ++attempt) {
    Sampler s(8, attempt);
    Scalar x = s.rational(), u = s.rational(), z = s.rational(), a = s.rational();
    Scalar fold = eval_bulk(eq, x, u, beq.k(x, u, a), z, a, beq.sigma(a));
    EXPECT_EQ(fold, (kMu - a) * (x + z) / x);
  }
}

TEST(Fold, H1TrivialClosedForm) {
  auto eq = bulk_equation("H1");
  auto beq = boundary_equation("H1.trivial", kMu);
  for (int attempt = 0; attempt < 30; ++attempt) {
    Sampler s(9, attempt);
    Scalar x = s.rational(), u = s.rational(), z = s.rational(), a = s.rational();
    Scalar fold = eval_bulk(eq, x, u, beq.k(x, u, a), z, a, beq.sigma(a));
    EXPECT_EQ(fold, 2 * u * (x - z));
    EXPECT_EQ(fold * a, 2 * beq.q(x, u, z, a));
  }
}

TEST(Fold, WrongKFails) {
  // H1.b1 k with the q of H1.b2 does not fold onto the same locus.
  auto b1 = boundary_equation("H1.b1", kMu);
  BoundaryRow row = b1.row();
  row.q = boundary_row("H1.b2").q;
  BoundaryEquation mixed(row, b1.bulk(), kMu);
  EXPECT_FALSE(check_fold(mixed.bulk(), mixed, 10, 1).passed);
}
