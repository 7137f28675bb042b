#include <gtest/gtest.h>

#include <set>

#include "qgb/consistency.hpp"
#include "qgb/maps.hpp"
#include "qgb/sampling.hpp"

using namespace qgb;

namespace {

const Scalar kMu = Scalar::fraction(5, 7);

// Compares a map with a closed form at random points where both are defined.
template <class F>
int compare_map(const YangBaxterMap& map, F closed, std::uint64_t seed) {
  int checked = 0;
  for (int attempt = 0; attempt < 60 && checked < 30; ++attempt) {
    Sampler s(seed, attempt);
    Scalar X = s.rational(), Y = s.rational(), a = s.rational(), b = s.rational();
    try {
      EdgePair want = closed(X, Y, a, b);
      EdgePair got = map(X, Y, a, b);
      EXPECT_EQ(got.first, want.first);
      EXPECT_EQ(got.second, want.second);
      ++checked;
    } catch (const DivisionByZero&) {
    }
  }
  return checked;
}

}  // namespace

TEST(Invariants, TableShape) {
  EXPECT_EQ(invariant_table().size(), 17u);
  std::set<std::string> ids;
  for (const auto& inv : invariant_table()) ids.insert(inv.id());
  EXPECT_EQ(ids.size(), 17u);
  EXPECT_EQ(invariant("H1", "eta1").yb_family, "H_V");
  EXPECT_EQ(invariant("A1d0", "eta2").normalization, Normalization::Negate);
  for (const char* f : {"Q2", "Q3d1", "Q4"}) EXPECT_THROW(invariant(f, "eta1"), UnknownId);
}

TEST(Invariants, ElementaryExamples) {
  const InvariantMap& ratio = invariant("Q1d0", "eta2");
  Scalar s = Scalar::fraction(3, 4), t = Scalar::fraction(-5, 2), lam = Scalar::fraction(7, 3);
  EXPECT_EQ(ratio(ratio.act(s, lam, true), ratio.act(t, lam, false)), ratio(s, t));
  const InvariantMap& sum = invariant("H1", "eta2");
  EXPECT_EQ(sum(sum.act(s, lam, true), sum.act(t, lam, false)), sum(s, t));
  EXPECT_EQ(sum.solve_t(s, sum(s, t)), t);
}

TEST(Invariants, EveryTableRowPasses) {
  for (const auto& inv : invariant_table()) {
    CheckResult r = invariant_check(inv, 100, 1);
    EXPECT_TRUE(r.passed) << inv.id() << r.to_json().dump();
  }
}

TEST(Invariants, WrongInvariantFails) {
  InvariantMap bad = invariant("Q1d0", "eta1");
  bad.kind = InvariantKind::Sum;
  EXPECT_FALSE(invariant_check(bad, 10, 1).passed);
  InvariantMap wrong_flow = invariant("H1", "eta1");
  wrong_flow.flow = FlowKind::Scale;
  EXPECT_FALSE(invariant_check(wrong_flow, 10, 1).passed);
}

TEST(YangBaxter, A1I1MatchesClosedForm) {
  YangBaxterMap m = yb_map_derive(invariant("A1d0", "eta1"));
  EXPECT_EQ(m.yb_family, "F_III");
  auto raw = [](const Scalar& X, const Scalar& Y, const Scalar& a, const Scalar& b) {
    Scalar den = b * X - a * Y;
    return EdgePair{a * Y * (X - Y) / den, b * X * (X - Y) / den};
  };
  EXPECT_EQ(compare_map(m, raw, 1), 30);
  auto f3 = [](const Scalar& X, const Scalar& Y, const Scalar& a, const Scalar& b) {
    Scalar P = (a * X - b * Y) / (X - Y);
    return EdgePair{Y / a * P, X / b * P};
  };
  EXPECT_EQ(compare_map(m.canonical(), f3, 2), 30);
}

TEST(YangBaxter, A1I2IsHIIAfterSignChange) {
  YangBaxterMap m = yb_map_derive(invariant("A1d0", "eta2"));
  EXPECT_EQ(m.yb_family, "H_II");
  auto raw = [](const Scalar& X, const Scalar& Y, const Scalar& a, const Scalar& b) {
    Scalar U = (b * Y - a * X * Y + b * X * Y - a * X * Y * Y) / (a + a * Y - b * Y - b * X * Y);
    Scalar V = (a * X + a * X * Y - b * X * Y - b * X * X * Y) / (b - a * X + b * X - a * X * Y);
    return EdgePair{U, V};
  };
  EXPECT_EQ(compare_map(m, raw, 3), 30);
  auto h2 = [](const Scalar& X, const Scalar& Y, const Scalar& a, const Scalar& b) {
    Scalar p = b + (a - b) * X - a * X * Y, q = a + (b - a) * Y - b * X * Y;
    return EdgePair{Y * p / q, X * q / p};
  };
  EXPECT_EQ(compare_map(m.canonical(), h2, 4), 30);
}

TEST(YangBaxter, EveryDerivedMapSatisfiesYbeAndIsQuadrirational) {
  for (const auto& inv : invariant_table()) {
    YangBaxterMap m = yb_map_derive(inv);
    CheckResult y = ybe_check(m, 100, 1);
    EXPECT_TRUE(y.passed) << inv.id() << y.to_json().dump();
    EXPECT_TRUE(y.residual.is_zero()) << inv.id();
    CheckResult q = quadrirational_check(m, 50, 1);
    EXPECT_TRUE(q.passed) << inv.id() << q.to_json().dump();
  }
}

TEST(YangBaxter, IdentityPassesAndPerturbationFails) {
  EXPECT_TRUE(ybe_check(identity_map(), 20, 1).passed);
  for (const char* id : {"H1/eta1", "A1d0/eta1", "Q1d0/eta2"}) {
    std::string s(id);
    auto slash = s.find('/');
    YangBaxterMap m = yb_map_derive(invariant(s.substr(0, slash), s.substr(slash + 1)));
    EXPECT_FALSE(ybe_check(m.perturbed(1), 10, 1).passed) << id;
  }
}

TEST(YangBaxter, NonSymmetryRaisesDerivationError) {
  InvariantMap fake{"Q2", "eta1", FlowKind::Shift, InvariantKind::Diff, "H_V", Normalization::Identity};
  EXPECT_THROW(yb_map_derive(fake), DerivationError);
}

TEST(Prescription, A1I1Example) {
  const auto& e = reflection_table().front();
  ASSERT_EQ(e.invariant, "A1d0/eta1");
  BoundaryEquation q = prescription_q(invariant("A1d0", "eta1"), e.refl, kMu);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Sampler s(5, attempt);
    Scalar x = s.rational(), y = s.rational(), z = s.rational(), a = s.rational();
    EXPECT_EQ(a * q.q(x, y, z, a), kMu * (x + y) + a * (y + z));
    EXPECT_EQ(q.sigma(a), kMu * kMu / a);
  }
  EXPECT_FALSE(q.has_k());
}

TEST(Prescription, A1I2Example) {
  const ReflectionEntry* entry = nullptr;
  for (const auto& e : reflection_table())
    if (e.invariant == "A1d0/eta2" && e.refl.source == "-X") entry = &e;
  ASSERT_NE(entry, nullptr);
  BoundaryEquation q = prescription_q(invariant("A1d0", "eta2"), entry->refl, kMu);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Sampler s(6, attempt);
    Scalar x = s.rational(), y = s.rational(), z = s.rational(), a = s.rational();
    EXPECT_EQ(q.q(x, y, z, a) * x * z, y * (x + z));
    EXPECT_EQ(q.sigma(a), 2 * kMu - a);
  }
}

TEST(Prescription, A1I3ReproducesSecondRow) {
  for (const auto& e : reflection_table()) {
    if (e.invariant != "A1d0/eta3") continue;
    EXPECT_EQ(e.row, "A1d0.b2");
    EXPECT_TRUE(prescription_locus_check(e, 50, 1).passed);
  }
}

TEST(Prescription, EveryEntryMatchesItsRowAndIsBoundaryConsistent) {
  for (const auto& e : reflection_table()) {
    CheckResult r = prescription_locus_check(e, 100, 1);
    EXPECT_TRUE(r.passed) << e.invariant << " " << e.refl.source << r.to_json().dump();
    auto slash = e.invariant.find('/');
    BoundaryEquation q =
        prescription_q(invariant(e.invariant.substr(0, slash), e.invariant.substr(slash + 1)), e.refl, kMu);
    EXPECT_TRUE(check_boundary_consistency(q.bulk(), q, 100, 1).passed) << q.id();
  }
}

TEST(Prescription, CoversEveryAsteriskedRow) {
  std::set<std::string> covered;
  for (const auto& e : reflection_table()) covered.insert(e.row);
  for (const char* fam : {"A1d0", "H1", "H2", "H3d1"}) {
    for (const auto& id : boundary_ids(fam)) {
      if (boundary_row(id).asterisk) EXPECT_TRUE(covered.count(id)) << id;
    }
  }
}

TEST(Prescription, WrongReflectionFailsTheLocusCheck) {
  ReflectionEntry e = reflection_table().front();
  e.row = "A1d0.b3";
  EXPECT_FALSE(prescription_locus_check(e, 10, 1).passed);
}

TEST(MapsSuite, FamilyFilter) {
  auto checks = maps_suite(20, 1, "H3d1");
  EXPECT_FALSE(checks.empty());
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.to_json().dump();
}
