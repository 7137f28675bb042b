// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "qgb/backlund.hpp"
#include "qgb/consistency.hpp"
#include "qgb/maps.hpp"
#include "qgb/toda.hpp"
#include "qgb/zerocurv.hpp"

using namespace qgb;

namespace {

constexpr std::uint64_t kSeed = 20240611;
const Scalar kMu = Scalar::fraction(5, 7);

struct Verdict {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "first failure: " << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.ok = false;
    v.note << "exception: " << e.what();
  }
  std::cout << (v.ok ? "[PASS] " : "[FAIL] ") << n << ". " << title;
  if (!v.note.str().empty()) std::cout << "  (" << v.note.str() << ")";
  std::cout << std::endl;
  if (!v.ok) ++failures;
}

// True when the z solving q(x,y,z;a)=0 does not depend on a or mu.
bool locus_is_parameter_free(const std::string& id) {
  const FieldMode mode = boundary_equation(id, kMu).bulk().mode();
  BoundaryEquation e1 = boundary_equation(id, kMu);
  BoundaryEquation e2 = boundary_equation(id, Scalar::fraction(-11, 3));
  int compared = 0;
  for (int attempt = 0; attempt < 40 && compared < 8; ++attempt) {
    Sampler s(kSeed + 17, attempt);
    Scalar x = s.field(mode), y = s.field(mode), a1 = s.parameter(mode), a2 = s.parameter(mode);
    try {
      Scalar z1 = solve_boundary(e1, BoundarySlot::Z, x, y, a1);
      Scalar z2 = solve_boundary(e2, BoundarySlot::Z, x, y, a2);
      if (!agree(z1, z2)) return false;
      ++compared;
    } catch (const Error&) {
    }
  }
  return compared > 0;
}

int run_cli(std::vector<std::string> args, std::string& out) {
  args.insert(args.begin(), "qgb");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream o, e;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  return code;
}

}  // namespace

int main() {
  criterion(1, "Bulk 3D consistency, all 13 families, 100 samples", [](Verdict& v) {
    for (const auto& id : bulk_ids()) {
      auto eq = bulk_equation(id);
      auto r = check_cube(eq, 100, kSeed);
      v.require(r.passed && r.samples == 100, id);
      if (eq.mode() == FieldMode::ExactRational) v.require(r.residual.is_zero(), id + " residual");
    }
  });

  criterion(2, "Boundary 3D consistency for every table row and trivial solution, with negative controls",
            [](Verdict& v) {
              int rows = 0, q_caught = 0, s_caught = 0, s_exempt = 0;
              for (const auto& id : boundary_ids()) {
                auto beq = boundary_equation(id, kMu);
                auto r = check_boundary_consistency(beq.bulk(), beq, 100, kSeed);
                v.require(r.passed, id);
                if (beq.bulk().mode() == FieldMode::ExactRational) v.require(r.residual.is_zero(), id);
                ++rows;
                bool q_fail = !check_boundary_consistency(beq.bulk(), beq.with_q_shift(1), 10, kSeed).passed;
                v.require(q_fail, id + " q-shift control");
                q_caught += q_fail;
                bool s_fail = !check_boundary_consistency(beq.bulk(), beq.with_sigma_shift(1), 10, kSeed).passed;
                if (s_fail) {
                  ++s_caught;
                } else {
                  // sigma(a)+1 is again an admissible parameter when the locus ignores (a, mu)
                  bool exempt = locus_is_parameter_free(id);
                  v.require(exempt, id + " sigma-shift control");
                  s_exempt += exempt;
                }
              }
              v.note << rows << " rows; q-shift caught " << q_caught << "; sigma-shift caught " << s_caught
                     << ", " << s_exempt << " parameter-free loci exempt";
              if (!v.ok) v.note << "; ";
            });

  criterion(3, "Fold equivalence for every row with a listed k", [](Verdict& v) {
    int n = 0;
    for (const auto& id : boundary_ids()) {
      auto beq = boundary_equation(id, kMu);
      if (!beq.has_k()) continue;
      auto r = check_fold(beq.bulk(), beq, 100, kSeed);
      v.require(r.passed, id);
      if (beq.bulk().mode() == FieldMode::ExactRational) v.require(r.residual.is_zero(), id);
      ++n;
    }
    v.note << n << " rows";
  });

  criterion(4, "Zero curvature: bulk and boundary, with off-locus controls", [](Verdict& v) {
    ZcrOptions off;
    off.off_locus = true;
    int bulk = 0, rows = 0;
    for (const auto& id : bulk_ids()) {
      auto eq = bulk_equation(id);
      if (eq.mode() != FieldMode::ExactRational) continue;
      v.require(check_zcr_bulk(eq, 100, kSeed).passed, id);
      v.require(!check_zcr_bulk(eq, 10, kSeed, off).passed, id + " off-locus control");
      ++bulk;
    }
    for (const auto& id : boundary_ids()) {
      auto beq = boundary_equation(id, kMu);
      v.require(check_zcr_boundary(beq.bulk(), beq, 100, kSeed).passed, id);
      v.require(!check_zcr_boundary(beq.bulk(), beq, 10, kSeed, off).passed, id + " off-locus control");
      ++rows;
    }
    v.note << bulk << " bulk families, " << rows << " boundary rows";
  });

  criterion(5, "Fusion identity, K-to-H correspondence, spectral map h(lambda) = -lambda-1", [](Verdict& v) {
    HkReport r = check_fusion_hk(kMu, 100, kSeed);
    v.require(r.fusion.passed && r.fusion.residual.is_zero(), "fusion");
    v.require(r.k_to_h.passed, "k-to-h");
    v.require(r.spectral.passed && r.spectral.details["h"] == "-lambda-1", "spectral map");
  });

  criterion(6, "Backlund transform on 8x8 strips", [](Verdict& v) {
    const char* rows[] = {"H1.trivial", "H1.b1", "H1.b2", "Q1d0.b1"};
    for (const char* id : rows) {
      auto beq = boundary_equation(id, kMu);
      auto eq = beq.bulk();
      Strip st = make_strip(8, 8, Scalar::fraction(3, 2), beq);
      bool done = false;
      for (std::uint64_t attempt = 0; attempt < 16 && !done; ++attempt) {
        Sampler s(kSeed, attempt);
        FieldAssignment init(st.graph.vertex_count());
        for (int vtx : st.initial_vertices()) init[vtx] = s.rational();
        try {
          FieldAssignment ground = propagate(st.graph, eq, &beq, init);
          BacklundResult r = backlund_transform(st.graph, eq, beq, ground, s.rational(), s.rational(), 0);
          v.require(check_solution(st.graph, eq, &beq, r.top).ok, std::string(id) + " g+");
          v.require(check_solution(st.graph, eq, &beq, r.first, true).ok, std::string(id) + " f bulk");
          done = true;
        } catch (const PropagationError&) {
        } catch (const BacklundError&) {
        }
      }
      v.require(done, std::string(id) + " no non-degenerate run");
    }
  });

  criterion(7, "Toda reduction cross-check, width 6, 6 steps", [](Verdict& v) {
    CrossOptions o;
    o.seed = kSeed;
    CrossReport r = crosscheck_reduction(o);
    for (const CheckResult& c : r.checks()) v.require(c.passed && c.residual.is_zero(), c.check);
    CrossOptions bad = o;
    bad.mu_shift = 1;
    v.require(!crosscheck_reduction(bad).boundary.passed, "mu+1 control");
  });

  criterion(8, "Maps route: invariants, Yang-Baxter maps, prescription regeneration", [](Verdict& v) {
    for (const auto& inv : invariant_table()) {
      v.require(invariant_check(inv, 100, kSeed).passed, inv.id() + " invariant");
      YangBaxterMap m = yb_map_derive(inv);
      CheckResult y = ybe_check(m, 100, kSeed);
      v.require(y.passed && y.residual.is_zero(), inv.id() + " YBE");
    }
    std::set<std::string> regenerated;
    for (const auto& e : reflection_table()) {
      v.require(prescription_locus_check(e, 100, kSeed).passed, e.invariant + " " + e.refl.source);
      auto slash = e.invariant.find('/');
      BoundaryEquation q = prescription_q(invariant(e.invariant.substr(0, slash), e.invariant.substr(slash + 1)),
                                          e.refl, kMu);
      v.require(check_boundary_consistency(q.bulk(), q, 100, kSeed).passed, q.id());
      regenerated.insert(e.row);
    }
    int asterisked = 0;
    for (const char* fam : {"A1d0", "H1", "H2", "H3d0", "H3d1"}) {
      for (const auto& id : boundary_ids(fam)) {
        if (!boundary_row(id).asterisk) continue;
        ++asterisked;
        v.require(regenerated.count(id) == 1, id + " not regenerated");
      }
    }
    v.note << invariant_table().size() << " invariants, " << asterisked << " asterisked rows regenerated";
  });

  criterion(9, "Determinism: identical (seed, samples) give byte-identical JSON", [](Verdict& v) {
    for (const char* suite : {"bulk", "boundary", "fold", "zcr", "maps"}) {
      std::string a, b;
      int ca = run_cli({"verify", suite, "--samples", "25", "--seed", "99"}, a);
      int cb = run_cli({"verify", suite, "--samples", "25", "--seed", "99"}, b);
      v.require(ca == 0 && cb == 0, std::string(suite) + " exit code");
      v.require(!a.empty() && a == b, std::string(suite) + " output differs");
    }
  });

  return failures == 0 ? 0 : 1;
}
