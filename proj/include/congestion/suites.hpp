#pragma once

#include <string>
#include <vector>

#include "congestion/config.hpp"
#include "congestion/records.hpp"

namespace congestion {

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Invariant verdicts of one finished run.
std::vector<CheckLine> run_checks(const Trajectory& traj, const Grid& g,
                                  Formulation formulation);

// Manufactured-solution orders for every shipped case.
std::vector<CheckLine> mms_suite();

// Dense single-step oracle and random cyclic systems.
std::vector<CheckLine> oracle_suite();

// Runs every *.cfg under dir (single runs and sweeps) and checks invariants.
std::vector<CheckLine> invariants_suite(const std::string& config_dir);

}  // namespace congestion
