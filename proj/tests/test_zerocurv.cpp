#include <gtest/gtest.h>

#include "qgb/sampling.hpp"
#include "qgb/zerocurv.hpp"

using namespace qgb;

namespace {

const Scalar kMu = Scalar::fraction(5, 7);

Moebius2 M(Scalar a, Scalar b, Scalar c, Scalar d) { return {a, b, c, d}; }

Moebius2 closed_L(const Scalar& y, const Scalar& x, const Scalar& a, const Scalar& b) {
  return M(a * y + b * (x - y), -a * x * y, a, -a * x + b * (x - y));
}

Moebius2 closed_K(const Scalar& x, const Scalar& c, const Scalar& mu) {
  return M(-1, (c / mu + 1) * x, 0, c / mu);
}

}  // namespace

TEST(Moebius, ActionIsAHomomorphism) {
  int checked = 0;
  for (int attempt = 0; attempt < 150 && checked < 100; ++attempt) {
    Sampler s(1, attempt);
    Moebius2 m{s.rational(), s.rational(), s.rational(), s.rational()};
    Moebius2 n{s.rational(), s.rational(), s.rational(), s.rational()};
    Scalar u = s.rational();
    try {
      EXPECT_EQ((m * n).act(u), m.act(n.act(u)));
      ++checked;
    } catch (const DivisionByZero&) {
    }
  }
  EXPECT_EQ(checked, 100);
}

TEST(Moebius, ProportionalityIsProjective) {
  Moebius2 m{1, 2, 3, 4};
  EXPECT_TRUE(proportional(m, m.scaled(Scalar::fraction(-7, 3))));
  EXPECT_FALSE(proportional(m, Moebius2{1, 2, 3, 5}));
  EXPECT_TRUE(projective_residual(m, m.scaled(5)).is_zero());
}

TEST(Moebius, FitRecoversMap) {
  Moebius2 m{2, -3, 5, 7};
  Moebius2 fit = moebius_fit([&](const Scalar& u) { return m.act(u); }, FieldMode::ExactRational);
  EXPECT_TRUE(proportional(fit, m));
  EXPECT_THROW(moebius_fit([](const Scalar& u) { return u * u; }, FieldMode::ExactRational),
               UnsupportedK);
  EXPECT_EQ(moebius_root(m), Scalar::fraction(3, 2));
}

TEST(Zcr, KOfQ1RowOne) {
  auto beq = boundary_equation("Q1d0.b1", kMu);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Sampler s(2, attempt);
    Scalar x = s.rational(), a = s.rational();
    EXPECT_TRUE(proportional(moebius_of_k(beq, x, a), closed_K(x, a, kMu)));
  }
}

TEST(Zcr, KOfNegationAndIdentityRows) {
  auto neg = boundary_equation("Q1d0.b4", kMu);  // k = -u
  EXPECT_TRUE(proportional(moebius_of_k(neg, 3, 2), M(-1, 0, 0, 1)));
  int identity_rows = 0;
  for (const auto& id : boundary_ids()) {
    auto beq = boundary_equation(id, kMu);
    if (!beq.has_k() || beq.bulk().mode() != FieldMode::ExactRational) continue;
    if (beq.k(2, 3, 1) == Scalar(3) && beq.k(5, 7, 2) == Scalar(7) && beq.k(-1, 4, 9) == Scalar(4)) {
      EXPECT_TRUE(proportional(moebius_of_k(beq, 5, 3), Moebius2::identity(FieldMode::ExactRational)))
          << id;
      ++identity_rows;
    }
  }
  EXPECT_GT(identity_rows, 0);
}

TEST(Zcr, LOfQ1MatchesClosedForm) {
  auto eq = bulk_equation("Q1d0");
  for (int attempt = 0; attempt < 30; ++attempt) {
    Sampler s(3, attempt);
    Scalar y = s.rational(), x = s.rational(), a = s.rational(), b = s.rational();
    if (a == b || x == y) continue;
    EXPECT_TRUE(proportional(build_L(eq, y, x, a, b), closed_L(y, x, a, b)));
  }
}

TEST(Zcr, LActsAsVertexSolve) {
  for (const auto& id : bulk_ids()) {
    auto eq = bulk_equation(id);
    if (eq.mode() != FieldMode::ExactRational) continue;
    int checked = 0;
    for (int attempt = 0; attempt < 60 && checked < 20; ++attempt) {
      Sampler s(4, attempt);
      Scalar x = s.rational(), y = s.rational(), u01 = s.rational();
      Scalar a = s.rational(), b = s.rational();
      try {
        Scalar u11 = solve_vertex(eq, Corner::U11, {x, y, u01, 0}, a, b);
        EXPECT_EQ(build_L(eq, y, x, a, b).act(u01), u11) << id;
        ++checked;
      } catch (const SingularSolve&) {
      } catch (const SingularL&) {
      } catch (const DivisionByZero&) {
      }
    }
    EXPECT_EQ(checked, 20) << id;
  }
}

TEST(Zcr, EqualParametersDegenerateQ1) {
  EXPECT_THROW(build_L(bulk_equation("Q1d0"), 2, 5, 3, 3), SingularL);
}

TEST(Zcr, BulkAllRationalFamilies) {
  for (const auto& id : bulk_ids()) {
    auto eq = bulk_equation(id);
    if (eq.mode() != FieldMode::ExactRational) continue;
    ZcrReport r = check_zcr_bulk(eq, 100, 1);
    EXPECT_TRUE(r.passed) << id << r.to_json().dump();
    ZcrOptions off;
    off.off_locus = true;
    EXPECT_FALSE(check_zcr_bulk(eq, 10, 1, off).passed) << id;
  }
}

TEST(Zcr, RescalingLeavesVerdictUnchanged) {
  ZcrOptions r;
  r.rescale = true;
  EXPECT_TRUE(check_zcr_bulk(bulk_equation("H2"), 50, 2, r).passed);
  auto beq = boundary_equation("Q1d0.b1", kMu);
  EXPECT_TRUE(check_zcr_boundary(beq.bulk(), beq, 50, 2, r).passed);
  r.off_locus = true;
  EXPECT_FALSE(check_zcr_boundary(beq.bulk(), beq, 10, 2, r).passed);
}

TEST(Zcr, BoundaryEveryRationalRow) {
  for (const auto& id : boundary_ids()) {
    auto beq = boundary_equation(id, kMu);
    if (beq.bulk().mode() != FieldMode::ExactRational) continue;
    ZcrReport r = check_zcr_boundary(beq.bulk(), beq, 100, 1);
    EXPECT_TRUE(r.passed) << id << r.to_json().dump();
    ZcrOptions off;
    off.off_locus = true;
    EXPECT_FALSE(check_zcr_boundary(beq.bulk(), beq, 10, 1, off).passed) << id;
  }
}

// K(z;c)L(z,y,s(a);c)L(y,x,a;c) + (c/mu)^3 L(z,y,s(a);s(c))L(y,x,a;s(c))K(x;c)
// = kappa q(x,y,z;a) M with kappa independent of z.
TEST(Zcr, Q1DefectFactorsThroughQ) {
  auto beq = boundary_equation("Q1d0.b1", kMu);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Sampler s(5, attempt);
    Scalar x = s.rational(), y = s.rational(), a = s.rational(), c = s.rational();
    if (x == y) continue;
    Scalar sa = beq.sigma(a), sc = beq.sigma(c);
    std::optional<Scalar> kappa;
    for (int k = 0; k < 3; ++k) {
      Scalar z = s.rational();
      Moebius2 lhs = closed_K(z, c, kMu) * closed_L(z, y, sa, c) * closed_L(y, x, a, c);
      Moebius2 rhs = closed_L(z, y, sa, sc) * closed_L(y, x, a, sc) * closed_K(x, c, kMu);
      Scalar f = c * c * c / (kMu * kMu * kMu);
      Moebius2 d{lhs.a + f * rhs.a, lhs.b + f * rhs.b, lhs.c + f * rhs.c, lhs.d + f * rhs.d};
      Moebius2 shape{a * (y - z), -a * x * (y - z) + c * z * (y - x), 0, c * (y - x)};
      Scalar q = beq.q(x, y, z, a);
      EXPECT_TRUE(d.c.is_zero());
      if (q.is_zero() || (y - z).is_zero()) continue;
      Scalar k0 = d.a / (q * shape.a);
      EXPECT_EQ(d.b, k0 * q * shape.b);
      EXPECT_EQ(d.d, k0 * q * shape.d);
      if (kappa) EXPECT_EQ(*kappa, k0);
      kappa = k0;
    }
  }
}

TEST(Hk, AllThreeIdentities) {
  HkReport r = check_fusion_hk(kMu, 100, 1);
  EXPECT_TRUE(r.fusion.passed) << r.fusion.to_json().dump();
  EXPECT_TRUE(r.k_to_h.passed) << r.k_to_h.to_json().dump();
  EXPECT_TRUE(r.spectral.passed) << r.spectral.to_json().dump();
  EXPECT_EQ(r.spectral.details["h"], "-lambda-1");
  EXPECT_TRUE(r.passed());
}

TEST(Hk, HMatrixForm) {
  Scalar lam = Scalar::fraction(2, 3), a(5), b(7), g(11);
  Moebius2 h0 = hk_H(0, lam, a, b, g), h1 = hk_H(1, lam, a, b, g);
  Scalar e = 2 * lam + 1;
  EXPECT_EQ(h0, (Moebius2{g, e * a, e * b, g}));
  EXPECT_EQ(h1, (Moebius2{g, -e * a, -e * b, g}));
}
