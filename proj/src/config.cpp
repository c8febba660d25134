#include "congestion/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "congestion/errors.hpp"

namespace congestion {

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"scheme.formulation", "u_form or w_form (default w_form)"},
      {"scheme.momentum_face", "w-form momentum flux value: limited or upwind (default limited)"},
      {"scheme.cfl", "advective CFL number in (0, 1] (default 0.45)"},
      {"scheme.dt_max", "largest allowed time step (default 0.05)"},
      {"scheme.dt_init", "cap on the first time step; later steps grow by at most 2x (default 0.05)"},
      {"scheme.newton_tol", "residual tolerance of the implicit solves (default 1e-10)"},
      {"scheme.max_halvings", "dt halvings tried before declaring vacuum (default 20)"},
      {"scheme.snapshot_every", "time between field snapshot files; a multiple of diagnostics.every (default 0.1)"},
      {"grid.n_cells", "number of cells, >= 4 (default 256)"},
      {"model.gamma", "exponent of p(rho) = rho^gamma for a single run"},
      {"sweep.gammas", "comma-separated increasing exponents for a sweep"},
      {"sweep.parallel_runs", "concurrent sweep runs (default 1; CONGESTION_SIM_THREADS overrides)"},
      {"init.kind", "cosine, two_mode or custom_csv (default cosine)"},
      {"init.rho_mean", "mean density of the cosine families (default 0.8)"},
      {"init.rho_amp", "density amplitude (default 0.1)"},
      {"init.w_amp", "desired-velocity amplitude (default 0.2)"},
      {"init.phase", "phase of the density profile in radians (default 0)"},
      {"init.mean_bound", "required bound on the mean density, in (0, 1) (default 0.95)"},
      {"init.file", "CSV with columns x, rho, w for custom_csv (relative to the config file)"},
      {"time.t_end", "final time (default 0.5)"},
      {"output.dir", "output directory (default out)"},
      {"output.format", "diagnostics format: jsonl or csv (default jsonl)"},
      {"diagnostics.every", "time between diagnostics records (default 0.01)"},
  };
  return keys;
}

int RunConfig::field_stride() const {
  return static_cast<int>(std::lround(field_every / diagnostics_every));
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos == v.size() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long i = std::stol(v, &pos);
    if (pos == v.size()) return static_cast<int>(i);
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw ConfigError("'" + key + "' expects a comma-separated list");
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::set<std::string> known;
  for (const ConfigKey& k : config_keys()) known.insert(k.key);
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'section.key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!known.count(key)) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    if (key == "scheme.formulation") c.scheme.formulation = parse_formulation(val);
    else if (key == "scheme.momentum_face") c.scheme.momentum_face = parse_momentum_face(val);
    else if (key == "scheme.cfl") c.scheme.cfl = to_double(key, val);
    else if (key == "scheme.dt_max") c.scheme.dt_max = to_double(key, val);
    else if (key == "scheme.dt_init") c.scheme.dt_init = to_double(key, val);
    else if (key == "scheme.newton_tol") c.scheme.newton_tol = to_double(key, val);
    else if (key == "scheme.max_halvings") c.scheme.max_halvings = to_int(key, val);
    else if (key == "scheme.snapshot_every") c.field_every = to_double(key, val);
    else if (key == "grid.n_cells") c.n_cells = to_int(key, val);
    else if (key == "model.gamma") c.gamma = to_double(key, val);
    else if (key == "sweep.gammas") c.gammas = to_list(key, val);
    else if (key == "sweep.parallel_runs") c.parallel_runs = to_int(key, val);
    else if (key == "init.kind") c.init.kind = parse_init_kind(val);
    else if (key == "init.rho_mean") c.init.rho_mean = to_double(key, val);
    else if (key == "init.rho_amp") c.init.rho_amp = to_double(key, val);
    else if (key == "init.w_amp") c.init.w_amp = to_double(key, val);
    else if (key == "init.phase") c.init.phase = to_double(key, val);
    else if (key == "init.mean_bound") c.init.mean_bound = to_double(key, val);
    else if (key == "init.file") c.init.file = val;
    else if (key == "time.t_end") c.t_end = to_double(key, val);
    else if (key == "output.dir") c.output_dir = val;
    else if (key == "output.format") c.output_format = val;
    else if (key == "diagnostics.every") c.diagnostics_every = to_double(key, val);
  }

  if (c.gamma.has_value() == !c.gammas.empty()) {
    throw ConfigError("exactly one of model.gamma and sweep.gammas must be given");
  }
  if (c.n_cells < 4) throw ConfigError("grid.n_cells must be >= 4");
  if (!(c.t_end > 0.0)) throw ConfigError("time.t_end must be positive");
  if (c.output_format != "jsonl" && c.output_format != "csv") {
    throw ConfigError("output.format must be jsonl or csv");
  }
  if (!(c.diagnostics_every > 0.0)) throw ConfigError("diagnostics.every must be positive");
  const double ratio = c.field_every / c.diagnostics_every;
  if (!(ratio >= 1.0 - 1e-9) || std::abs(ratio - std::round(ratio)) > 1e-9) {
    throw ConfigError("scheme.snapshot_every must be a whole multiple of diagnostics.every");
  }
  if (c.parallel_runs < 1) throw ConfigError("sweep.parallel_runs must be >= 1");
  if (c.init.kind == InitKind::custom_csv && c.init.file.empty()) {
    throw ConfigError("init.kind = custom_csv needs init.file");
  }
  if (c.init.kind != InitKind::custom_csv &&
      !(c.init.rho_amp >= 0.0 && c.init.rho_mean > c.init.rho_amp)) {
    throw ConfigError("initial density needs init.rho_mean > init.rho_amp >= 0");
  }
  c.scheme.snapshot_every = c.diagnostics_every;
  c.scheme.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig c = parse_config(buf.str());
  if (!c.init.file.empty() && std::filesystem::path(c.init.file).is_relative()) {
    c.init.file = (std::filesystem::path(path).parent_path() / c.init.file).string();
  }
  return c;
}

}  // namespace congestion
