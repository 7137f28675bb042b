#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "qgb/backlund.hpp"
#include "qgb/consistency.hpp"
#include "qgb/maps.hpp"
#include "qgb/toda.hpp"
#include "qgb/zerocurv.hpp"

namespace qgb::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scalar parse_value(const std::string& text, const char* flag, FieldMode mode = FieldMode::ExactRational) {
  try {
    return Scalar::parse(text, mode);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid value for --") + flag + ": " + text);
  }
}

void check_family(const std::string& family) {
  if (family.empty()) return;
  for (const auto& id : bulk_ids()) {
    if (id == family) return;
  }
  throw UsageError("unknown family: " + family);
}

void check_row(const RunConfig& c) {
  if (c.row.empty()) return;
  auto ids = boundary_ids(c.family);
  for (const auto& id : ids) {
    if (id == c.row) return;
  }
  throw UsageError("unknown boundary row: " + c.row + (c.family.empty() ? "" : " for family " + c.family));
}

std::vector<std::string> selected_rows(const RunConfig& c) {
  if (!c.row.empty()) return {c.row};
  return boundary_ids(c.family);
}

std::vector<std::string> selected_families(const RunConfig& c) {
  if (!c.family.empty()) return {c.family};
  if (!c.row.empty()) return {family_of(c.row)};
  return bulk_ids();
}

BoundaryEquation mutated(const BoundaryEquation& beq, const std::string& mutate) {
  if (mutate.empty()) return beq;
  const FieldMode mode = beq.bulk().mode();
  Scalar one = Scalar::from_int(1, mode);
  return mutate == "sigma" ? beq.with_sigma_shift(one) : beq.with_q_shift(one);
}

// A check that threw is reported as failed, with the reason.
CheckResult guarded(const std::string& name, std::vector<std::string> subjects,
                    const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    CheckResult r;
    r.check = name;
    r.subjects = std::move(subjects);
    r.passed = false;
    r.details["error"] = e.what();
    return r;
  }
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw UsageError("cannot write " + c.output);
  f << text;
}

void write_dump(const RunConfig& c, const std::string& text) {
  if (c.dump.empty()) return;
  std::ofstream f(c.dump, std::ios::binary);
  if (!f) throw UsageError("cannot write " + c.dump);
  f << text;
}

int finish(const RunConfig& c, SuiteReport& rep, std::ostream& out) {
  std::string text = c.format == "text" ? rep.to_text() : rep.to_json().dump(2) + "\n";
  emit(c, text, out);
  return rep.passed() ? kPass : kFail;
}

// ---------------------------------------------------------------------------

void suite_bulk(const RunConfig& c, SuiteReport& rep) {
  for (const auto& id : selected_families(c)) {
    BulkEquation eq = bulk_equation(id);
    CubeOptions opt;
    if (c.mutate == "const") opt.mutate_face = 0;
    rep.checks.push_back(guarded("cube", {id}, [&] { return check_cube(eq, c.samples, c.seed, opt); }));
  }
}

void suite_boundary(const RunConfig& c, SuiteReport& rep, const Scalar& mu) {
  for (const auto& id : selected_rows(c)) {
    BoundaryEquation beq = mutated(boundary_equation(id, mu), c.mutate);
    rep.checks.push_back(guarded("boundary-consistency", {beq.bulk().id(), id}, [&] {
      return check_boundary_consistency(beq.bulk(), beq, c.samples, c.seed);
    }));
  }
}

void suite_fold(const RunConfig& c, SuiteReport& rep, const Scalar& mu) {
  for (const auto& id : selected_rows(c)) {
    BoundaryEquation beq = mutated(boundary_equation(id, mu), c.mutate);
    if (!beq.has_k()) continue;
    rep.checks.push_back(guarded("fold", {beq.bulk().id(), id}, [&] {
      return check_fold(beq.bulk(), beq, c.samples, c.seed);
    }));
  }
}

void suite_zcr(const RunConfig& c, SuiteReport& rep, const Scalar& mu) {
  ZcrOptions opt;
  opt.off_locus = c.mutate == "const";
  if (c.row.empty()) {
    for (const auto& id : selected_families(c)) {
      BulkEquation eq = bulk_equation(id);
      if (eq.mode() != FieldMode::ExactRational) continue;
      rep.checks.push_back(guarded("zcr-bulk", {id}, [&] { return check_zcr_bulk(eq, c.samples, c.seed, opt); }));
    }
  }
  for (const auto& id : selected_rows(c)) {
    BoundaryEquation beq = boundary_equation(id, mu);
    if (c.mutate == "sigma") beq = beq.with_sigma_shift(Scalar::from_int(1, beq.bulk().mode()));
    rep.checks.push_back(guarded("zcr-boundary", {beq.bulk().id(), id}, [&] {
      return check_zcr_boundary(beq.bulk(), beq, c.samples, c.seed, opt);
    }));
  }
  if (c.row.empty() && (c.family.empty() || c.family == "Q1d0")) {
    HkReport hk;
    try {
      hk = check_fusion_hk(mu, c.samples, c.seed);
      for (const CheckResult* r : {&hk.fusion, &hk.k_to_h, &hk.spectral}) rep.checks.push_back(*r);
    } catch (const Error& e) {
      CheckResult r;
      r.check = "fusion-hk";
      r.subjects = {"Q1d0", "Q1d0.b3"};
      r.details["error"] = e.what();
      rep.checks.push_back(r);
    }
  }
}

void suite_maps(const RunConfig& c, SuiteReport& rep) {
  try {
    for (auto& r : maps_suite(c.samples, c.seed, c.family)) rep.checks.push_back(std::move(r));
  } catch (const Error& e) {
    CheckResult r;
    r.check = "maps";
    r.subjects = {c.family.empty() ? std::string("all") : c.family};
    r.details["error"] = e.what();
    rep.checks.push_back(r);
  }
}

// ---------------------------------------------------------------------------

FieldAssignment random_initial(const QuadGraphB& g, const std::vector<int>& verts, FieldMode mode,
                               std::uint64_t seed, std::uint64_t attempt) {
  Sampler s(seed, attempt);
  FieldAssignment init(g.vertex_count());
  for (int v : verts) init[v] = s.field(mode);
  return init;
}

CheckResult solution_report(const std::string& name, const std::vector<std::string>& subjects,
                            const SolutionCheck& sc, const QuadGraphB& g) {
  CheckResult r;
  r.check = name;
  r.subjects = subjects;
  r.samples = sc.faces_checked;
  r.passed = sc.ok;
  r.residual = sc.residual;
  if (!sc.ok) r.first_failure = {{"face", sc.failing_face}, {"description", g.describe_face(sc.failing_face)}};
  return r;
}

int sim_propagate(const RunConfig& c, SuiteReport& rep, std::ostream& out, std::ostream& err) {
  PropagationProblem p;
  if (!c.graph.empty()) {
    std::ifstream f(c.graph);
    if (!f) throw UsageError("cannot read " + c.graph);
    Json j;
    try {
      j = Json::parse(f);
      p = problem_from_json(j);
    } catch (const Json::exception& e) {
      throw UsageError(std::string("malformed problem file: ") + e.what());
    } catch (const UnknownId& e) {
      throw UsageError(e.what());
    }
  } else {
    p.family = c.family.empty() ? (c.row.empty() ? "Q1d0" : family_of(c.row)) : c.family;
    p.row = c.row.empty() ? p.family + ".trivial" : c.row;
    BulkEquation eq = bulk_equation(p.family);
    FieldMode mode = eq.mode();
    p.mu = parse_value(c.mu, "mu", mode);
    Scalar a = parse_value(c.a, "a", mode);
    Strip st = make_strip(c.width, c.steps, a, boundary_equation(p.row, p.mu));
    p.graph = st.graph;
    p.initial = random_initial(st.graph, st.initial_vertices(), mode, c.seed, 0);
  }
  BulkEquation eq = bulk_equation(p.family);
  std::optional<BoundaryEquation> beq;
  if (!p.row.empty()) beq = boundary_equation(p.row, p.mu);
  const BoundaryEquation* bp = beq ? &*beq : nullptr;
  std::vector<std::string> subjects = {p.family};
  if (!p.row.empty()) subjects.push_back(p.row);
  try {
    FieldAssignment field = propagate(p.graph, eq, bp, p.initial);
    rep.checks.push_back(solution_report("solution", subjects, check_solution(p.graph, eq, bp, field), p.graph));
    write_dump(c, field_to_json(p.graph, field).dump(2) + "\n");
  } catch (const PropagationError& e) {
    err << "propagation failed at face " << e.face() << " (" << p.graph.describe_face(e.face()) << "): " << e.what() << "\n";
    CheckResult r;
    r.check = "propagate";
    r.subjects = subjects;
    r.first_failure = {{"face", e.face()}, {"description", p.graph.describe_face(e.face())}, {"error", e.what()}};
    rep.checks.push_back(r);
  } catch (const ContradictionError& e) {
    err << "inconsistent data: " << e.what() << "\n";
    CheckResult r;
    r.check = "propagate";
    r.subjects = subjects;
    r.first_failure = {{"error", e.what()}};
    rep.checks.push_back(r);
  } catch (const IllPosedError& e) {
    err << "ill-posed problem at vertex " << e.vertex() << ": " << e.what() << "\n";
    CheckResult r;
    r.check = "propagate";
    r.subjects = subjects;
    r.first_failure = {{"vertex", e.vertex()}, {"error", e.what()}};
    rep.checks.push_back(r);
  }
  return finish(c, rep, out);
}

int sim_backlund(const RunConfig& c, SuiteReport& rep, std::ostream& out, std::ostream& err) {
  std::string family = c.family.empty() ? (c.row.empty() ? "H1" : family_of(c.row)) : c.family;
  std::string row = c.row.empty() ? "trivial" : c.row;
  if (row.find('.') == std::string::npos) row = family + "." + row;
  RunConfig checked = c;
  checked.family = family;
  checked.row = row;
  check_row(checked);
  BulkEquation eq = bulk_equation(family);
  FieldMode mode = eq.mode();
  Scalar mu = parse_value(c.mu, "mu", mode);
  Scalar a = parse_value(c.a, "a", mode);
  Scalar lambda = parse_value(c.lambda, "lambda", mode);
  Scalar seed_value = parse_value(c.seed_value, "seed-value", mode);
  BoundaryEquation beq = boundary_equation(row, mu);
  Strip st = make_strip(c.width, c.steps, a, beq);
  std::vector<std::string> subjects = {family, row};
  FieldAssignment ground;
  bool have_ground = false;
  for (std::uint64_t attempt = 0; attempt < 16 && !have_ground; ++attempt) {
    try {
      ground = propagate(st.graph, eq, &beq, random_initial(st.graph, st.initial_vertices(), mode, c.seed, attempt));
      have_ground = true;
    } catch (const PropagationError&) {
    }
  }
  if (!have_ground) {
    err << "no non-degenerate ground field found\n";
    CheckResult r;
    r.check = "backlund";
    r.subjects = subjects;
    r.details["error"] = "degenerate ground field";
    rep.checks.push_back(r);
    return finish(c, rep, out);
  }
  try {
    BacklundResult res = backlund_transform(st.graph, eq, beq, ground, lambda, seed_value, 0);
    rep.checks.push_back(solution_report("backlund-first", subjects,
                                         check_solution(st.graph, eq, &beq, res.first, true), st.graph));
    rep.checks.push_back(
        solution_report("backlund-top", subjects, check_solution(st.graph, eq, &beq, res.top), st.graph));
    write_dump(c, field_to_json(st.graph, res.top).dump(2) + "\n");
  } catch (const Error& e) {
    err << "backlund transform failed: " << e.what() << "\n";
    CheckResult r;
    r.check = "backlund";
    r.subjects = subjects;
    r.first_failure = {{"error", e.what()}};
    rep.checks.push_back(r);
  }
  return finish(c, rep, out);
}

int sim_toda(const RunConfig& c, SuiteReport& rep, std::ostream& out, std::ostream& err) {
  Scalar a = parse_value(c.a, "a"), mu = parse_value(c.mu, "mu"), xbar0 = parse_value(c.xbar0, "xbar0");
  TodaLattice lat;
  try {
    lat = TodaLattice(c.width, c.steps, a, mu, xbar0);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  try {
    seed_columns(lat, c.seed);
    toda_evolve(lat, c.steps);
  } catch (const BreakdownError& e) {
    err << "Toda evolution broke down at (m, n) = (" << e.m() << ", " << e.n() << "): " << e.what() << "\n";
    CheckResult r;
    r.check = "toda-evolve";
    r.subjects = {"Q1d0", lat.row};
    r.first_failure = {{"m", e.m()}, {"n", e.n()}, {"error", e.what()}};
    rep.checks.push_back(r);
    return finish(c, rep, out);
  }
  for (auto& r : toda_checks(lat)) rep.checks.push_back(std::move(r));
  write_dump(c, lat.to_csv());
  if (c.format == "csv") {
    emit(c, lat.to_csv(), out);
    return rep.passed() ? kPass : kFail;
  }
  return finish(c, rep, out);
}

int sim_crosscheck(const RunConfig& c, SuiteReport& rep, std::ostream& out, std::ostream&) {
  CrossOptions o;
  o.width = c.width;
  o.steps = c.steps;
  o.a = parse_value(c.a, "a");
  o.mu = parse_value(c.mu, "mu");
  o.xbar0 = parse_value(c.xbar0, "xbar0");
  o.seed = c.seed;
  if (c.mutate == "const" || c.mutate == "sigma") o.mu_shift = Scalar(1);
  CrossReport cr;
  try {
    cr = crosscheck_reduction(o);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  for (auto& r : cr.checks()) rep.checks.push_back(std::move(r));
  write_dump(c, cr.extracted.to_csv());
  if (c.format == "csv") {
    emit(c, cr.extracted.to_csv(), out);
    return rep.passed() ? kPass : kFail;
  }
  return finish(c, rep, out);
}

void add_common(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--family", c.family, "Bulk equation id, e.g. Q1d0, H1, A2");
  cmd->add_option("--row", c.row, "Boundary row id, e.g. Q1d0.b3 or H1.trivial");
  cmd->add_option("--samples", c.samples, "Samples per check")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--mu", c.mu, "Boundary parameter mu (fraction)");
  cmd->add_option("-a,--a", c.a, "Edge parameter a (fraction)");
  cmd->add_option("-b,--b", c.b, "Edge parameter b (fraction)");
  cmd->add_option("--lambda", c.lambda, "Backlund parameter");
  cmd->add_option("--seed-value", c.seed_value, "Value of the Backlund field at the seed vertex");
  cmd->add_option("--xbar0", c.xbar0, "Boundary value xbar_0 for the Toda reduction");
  cmd->add_option("--width", c.width, "Strip width")->check(CLI::Range(2, 1000));
  cmd->add_option("--steps", c.steps, "Number of time steps")->check(CLI::Range(1, 1000));
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text", "csv"}));
  cmd->add_option("-o,--output", c.output, "Report file (stdout when omitted)");
  cmd->add_option("--dump", c.dump, "Data file: CSV for Toda runs, field JSON otherwise");
  cmd->add_option("--mutate", c.mutate, "Inject a defect: sigma or const")->check(CLI::IsMember({"sigma", "const"}));
}

}  // namespace

int run_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    check_family(c.family);
    check_row(c);
    if (!c.family.empty() && !c.row.empty() && family_of(c.row) != c.family) {
      throw UsageError("row " + c.row + " does not belong to family " + c.family);
    }
    SuiteReport rep;
    rep.suite = c.target;
    rep.seed = c.seed;
    rep.samples = c.samples;
    Scalar mu = parse_value(c.mu, "mu");
    const std::string& s = c.target;
    bool all = s == "all";
    if (all || s == "bulk") suite_bulk(c, rep);
    if (all || s == "boundary") suite_boundary(c, rep, mu);
    if (all || s == "fold") suite_fold(c, rep, mu);
    if (all || s == "zcr") suite_zcr(c, rep, mu);
    if (all || s == "maps") suite_maps(c, rep);
    return finish(c, rep, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
}

int run_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    check_family(c.family);
    if (c.target != "backlund") check_row(c);
    SuiteReport rep;
    rep.suite = "simulate-" + c.target;
    rep.seed = c.seed;
    rep.samples = c.samples;
    if (c.target == "propagate") return sim_propagate(c, rep, out, err);
    if (c.target == "backlund") return sim_backlund(c, rep, out, err);
    if (c.target == "toda") return sim_toda(c, rep, out, err);
    if (c.target == "crosscheck") return sim_crosscheck(c, rep, out, err);
    throw UsageError("unknown simulation: " + c.target);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InconclusiveError& e) {
    err << "simulation failed: " << e.what() << "\n";
    return kFail;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integrable quad-graph equations with boundary: verification and simulation"};
  app.require_subcommand(1);
  RunConfig c;

  std::string suite_flag;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("target", c.target, "bulk | boundary | fold | zcr | maps | all")
      ->check(CLI::IsMember({"bulk", "boundary", "fold", "zcr", "maps", "all"}));
  verify->add_option("--suite", suite_flag, "Same as the positional suite")
      ->check(CLI::IsMember({"bulk", "boundary", "fold", "zcr", "maps", "all"}));
  add_common(verify, c);

  auto* simulate = app.add_subcommand("simulate", "Run a simulation");
  simulate->add_option("what", c.target, "propagate | backlund | toda | crosscheck")
      ->required()
      ->check(CLI::IsMember({"propagate", "backlund", "toda", "crosscheck"}));
  simulate->add_option("--graph", c.graph, "Propagation problem (JSON)");
  add_common(simulate, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  if (verify->parsed()) {
    c.command = "verify";
    if (!suite_flag.empty()) {
      if (!c.target.empty() && c.target != suite_flag) {
        err << "usage error: conflicting suites " << c.target << " and " << suite_flag << "\n";
        return kUsage;
      }
      c.target = suite_flag;
    }
    if (c.target.empty()) c.target = "all";
    return run_verify(c, out, err);
  }
  c.command = "simulate";
  return run_simulate(c, out, err);
}

}  // namespace qgb::cli
