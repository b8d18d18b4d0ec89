#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qgossip/analysis.hpp"
#include "qgossip/qstate.hpp"

namespace qgossip::cli {

// Shared configuration for all subcommands. Every command is deterministic
// given its full config (including the seed); randomized commands refuse to
// run without one.
struct ExperimentConfig {
  int n = 0;
  std::vector<int> k_values;         // one entry for most commands
  int steps = 200;
  int trials = 2000;
  std::optional<std::uint64_t> seed;
  std::string graph_path;            // deterministic mode input
  std::string schedule_path;         // explicit schedule file, overrides graph/k/seed
  std::string init_spec;
  std::string out_path;
  bool exact = true;                 // simulate-reduced: exact vs Monte Carlo
  bool want_nu_star = false;
  std::string eigen_out;             // optional eigenvalue-table CSV
  std::string trajectories_out;      // optional per-trial trajectory CSV
  int qubit_cap = kDefaultQubitCap;
  int rate_cap = kDefaultFullRateCap;
  int record_every = 1;
  int burn_in = 10;
  std::string schema_kind;
  std::string schema_path;
};

// If QGOSSIP_OUT_DIR is set and the path is relative, outputs land there.
std::string resolve_out_path(const std::string& path);

int cmd_simulate_reduced(const ExperimentConfig& config, std::ostream& err = std::cerr);
int cmd_simulate_full(const ExperimentConfig& config, std::ostream& err = std::cerr);
int cmd_rates(const ExperimentConfig& config, std::ostream& err = std::cerr);
int cmd_feasibility(const ExperimentConfig& config, std::ostream& err = std::cerr);
int cmd_schema_check(const ExperimentConfig& config, std::ostream& err = std::cerr);

}  // namespace qgossip::cli
