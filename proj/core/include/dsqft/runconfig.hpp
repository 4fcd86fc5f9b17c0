#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dsqft/geometry.hpp"
#include "dsqft/grid.hpp"
#include "dsqft/testfn.hpp"

namespace dsqft {

// Exit codes of the run dispatcher (the CLI maps parse failures to 64).
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 2;
inline constexpr int kExitBudgetExceeded = 3;
inline constexpr int kExitConfigError = 64;

struct WordSpec {
  struct SlotSpec {
    std::string tag;  // "in" | "loc" | "out" | "current"
    int fn = 0;       // index into the fixture function list
  };
  std::vector<SlotSpec> slots;
};

struct RunConfig {
  std::string command;  // modes-validate | kernel-eval | npoint | smatrix |
                        // out-npoint | gns-gram | dispersion-scan |
                        // stationary-check | contrast | report
  ModelParams params;
  GridSpec grid;
  int s_max = 12;
  double domain_eps = 5e-4;

  // command-specific knobs
  int n = 3;
  int k_in = 0;
  double epsilon = 0.1;
  double eta = 0.8;
  double tau1 = 0.0;
  double tau2 = 0.3;
  double angle = 1.0;
  std::vector<double> eps_sequence;
  std::string tags;  // slot tags for npoint, e.g. "LLL", "ILO"
  bool exploratory = false;

  std::string fixture;               // named fixture (functions + defaults)
  std::string fixtures_dir = "fixtures";
  std::vector<TestFunction> functions;  // inline functions (override fixture)
  std::vector<WordSpec> basis;          // gns-gram word basis

  std::string fixture_run;  // contrast: directory of a finished out-npoint run
  std::string replay;       // stationary-check: certificate file to replay
  std::vector<std::string> runs;  // report: finished run directories

  std::string output_dir = "runs/out";

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
};

// Executes one command, writes summary.json (+ CSV tables) into
// config.output_dir together with the resolved config. Returns an exit code.
int run(const RunConfig& config, std::ostream& log);

// Collates finished runs into bundle.md + threshold_table.csv under out_dir.
// Throws std::invalid_argument when runs are missing or empty.
void report_bundle(const std::vector<std::string>& run_dirs, const std::string& out_dir);

}  // namespace dsqft
