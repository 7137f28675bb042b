#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgb/errors.hpp"
#include "qgb/sampling.hpp"
#include "qgb/scalar.hpp"

namespace qgb {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "qb-report/1";

/// Outcome of one randomized (or deterministic) verification.
struct CheckResult {
  std::string check;
  std::vector<std::string> subjects;
  int samples = 0;
  int discarded = 0;
  bool passed = false;
  Residual residual;
  Json first_failure;          // null unless a sample failed
  Json details = Json::object();

  Json to_json() const;
};

using ConsistencyReport = CheckResult;
using FoldReport = CheckResult;
using ZcrReport = CheckResult;

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  Json to_json() const;
  std::string to_text() const;
};

/// Result of a single sample inside run_samples.
struct SampleOutcome {
  bool ok = true;
  Scalar residual;
  Json trace;
};

/// Drives `body` over fresh samplers until `samples` non-degenerate samples
/// have been evaluated. Degenerate attempts (singular solves, division by
/// zero) are discarded and counted. Throws InconclusiveError when the
/// attempt budget of 10 * samples runs out first.
template <class Body>
void run_samples(CheckResult& result, int samples, std::uint64_t seed, Body&& body) {
  if (samples < 1) throw DomainError("samples must be >= 1");
  const int budget = 10 * samples;
  int valid = 0;
  bool all_ok = true;
  for (int attempt = 0; attempt < budget && valid < samples; ++attempt) {
    Sampler sampler(seed, static_cast<std::uint64_t>(attempt));
    SampleOutcome out;
    try {
      out = body(sampler);
    } catch (const SingularSolve&) {
      ++result.discarded;
      continue;
    } catch (const SingularSample&) {
      ++result.discarded;
      continue;
    } catch (const DivisionByZero&) {
      ++result.discarded;
      continue;
    } catch (const SingularL&) {
      ++result.discarded;
      continue;
    }
    ++valid;
    result.residual.observe(out.residual);
    if (!out.ok && all_ok) {
      all_ok = false;
      result.first_failure = out.trace;
      result.first_failure["sample"] = attempt;
    }
  }
  result.samples = valid;
  if (valid < samples) {
    throw InconclusiveError(result.check + ": only " + std::to_string(valid) + " of " +
                            std::to_string(samples) + " samples were non-degenerate");
  }
  result.passed = all_ok;
}

Json scalar_json(const Scalar& s);

}  // namespace qgb
