#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qgb::cli {

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

struct RunConfig {
  std::string command;  // verify | simulate
  std::string target;   // suite or simulation
  std::string family;
  std::string row;
  int samples = 100;
  std::uint64_t seed = 1;
  std::string mu = "5/7";
  std::string a = "3/2";
  std::string b = "2/5";
  std::string lambda = "1";
  std::string seed_value = "1";
  std::string xbar0 = "2/3";
  int width = 6;
  int steps = 6;
  std::string format = "json";  // json | text | csv
  std::string output;           // report path, stdout when empty
  std::string dump;             // data file (CSV or field JSON)
  std::string mutate;           // sigma | const
  std::string graph;            // propagation problem JSON
};

/// Parses argv; throws CLI::ParseError subclasses on bad usage.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qgb::cli
