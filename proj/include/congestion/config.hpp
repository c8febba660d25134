#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "congestion/initial_data.hpp"
#include "congestion/solver.hpp"

namespace congestion {

struct RunConfig {
  SchemeConfig scheme;
  int n_cells = 256;
  std::optional<double> gamma;
  std::vector<double> gammas;
  InitialRecipe init;
  double t_end = 0.5;
  std::string output_dir = "out";
  std::string output_format = "jsonl";
  // Time between diagnostics records (and trajectory snapshots).
  double diagnostics_every = 0.01;
  // Time between field snapshot files (scheme.snapshot_every).
  double field_every = 0.1;
  int parallel_runs = 1;

  bool is_sweep() const { return !gammas.empty(); }
  // Field files are written every k-th diagnostics record.
  int field_stride() const;
};

struct ConfigKey {
  std::string key;
  std::string meaning;
};

const std::vector<ConfigKey>& config_keys();

// Grammar: one `section.key = value` per line, `#` starts a comment.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace congestion
