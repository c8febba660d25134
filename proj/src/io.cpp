#include "congestion/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "congestion/errors.hpp"

namespace congestion {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string json_number(double v) {
  return std::isfinite(v) ? format_double(v) : std::string("null");
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

template <class F>
void for_each_field(const DiagnosticsRecord& r, F f) {
  f("t", r.t);
  f("mass", r.mass);
  f("ke_u", r.ke_u);
  f("ke_w", r.ke_w);
  f("H_total", r.H_total);
  f("rho_min", r.rho_min);
  f("rho_max", r.rho_max);
  f("W_max", r.W_max);
  f("W_min", r.W_min);
  f("rhoW2", r.rhoW2);
  f("pi_l1", r.pi_l1);
  f("dpi_l2", r.dpi_l2);
  f("switching_residual", r.switching_residual);
  f("lower_bound_margin", r.lower_bound_margin);
  f("energy_residual", r.energy_residual);
  f("H_balance_residual", r.H_balance_residual);
  f("rho_p_balance_residual", r.rho_p_balance_residual);
}

}  // namespace

void write_snapshot_csv(std::ostream& out, const State& s, const Grid& g,
                        const ModelParams& params) {
  const DerivedFields d = derive_fields(s, g, params);
  out << "x,rho,u,w,pi,W,V\n";
  for (int i = 0; i < g.n_cells(); ++i) {
    out << format_double(g.x(i)) << ',' << format_double(s.rho[i]) << ','
        << format_double(d.u[i]) << ',' << format_double(d.w[i]) << ','
        << format_double(d.pi[i]) << ',' << format_double(d.W[i]) << ','
        << format_double(d.V[i]) << '\n';
  }
}

void write_snapshot_csv(const std::string& path, const State& s, const Grid& g,
                        const ModelParams& params) {
  std::ofstream out = open_out(path);
  write_snapshot_csv(out, s, g, params);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  throw ConfigError("CSV has no column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read CSV file '" + path + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("CSV file '" + path + "' is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(trim(cell));
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell = trim(cell);
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
      row.push_back(v);
    }
    if (row.size() != t.header.size()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": wrong number of columns");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string record_json(const DiagnosticsRecord& rec) {
  std::string out = "{";
  bool first = true;
  for_each_field(rec, [&](const char* name, double v) {
    if (!first) out += ',';
    first = false;
    out += json_string(name) + ':' + json_number(v);
  });
  return out + "}";
}

std::string record_csv_header() {
  std::string out;
  for_each_field(DiagnosticsRecord{}, [&](const char* name, double) {
    if (!out.empty()) out += ',';
    out += name;
  });
  return out;
}

std::string record_csv_row(const DiagnosticsRecord& rec) {
  std::string out;
  bool first = true;
  for_each_field(rec, [&](const char*, double v) {
    if (!first) out += ',';
    first = false;
    out += format_double(v);
  });
  return out;
}

void write_records(const std::string& path, const std::vector<DiagnosticsRecord>& recs,
                   const std::string& format) {
  std::ofstream out = open_out(path);
  if (format == "csv") {
    out << record_csv_header() << '\n';
    for (const auto& r : recs) out << record_csv_row(r) << '\n';
  } else {
    for (const auto& r : recs) out << record_json(r) << '\n';
  }
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "gamma,status,max_rho_over_run,min_rho_over_run,switching_residual_max,pi_l1_max,"
         "dpi_l2_max,I_plain_abs,W_max_drift\n";
  for (const SweepRow& r : report.rows) {
    out << format_double(r.gamma) << ',' << (r.ok ? "ok" : "failed");
    for (double v : {r.max_rho_over_run, r.min_rho_over_run, r.switching_residual_max,
                     r.pi_l1_max, r.dpi_l2_max, r.I_plain_abs, r.W_max_drift}) {
      out << ',' << (r.ok ? format_double(v) : std::string());
    }
    out << '\n';
  }
  return out.str();
}

std::string sweep_summary_json(const SweepReport& report) {
  auto list = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + json_number(v[k]);
    return s + "]";
  };
  std::ostringstream out;
  out << "{\n  \"rows\": [\n";
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const SweepRow& r = report.rows[k];
    out << "    {\"gamma\":" << json_number(r.gamma) << ",\"ok\":" << (r.ok ? "true" : "false");
    if (r.ok) {
      out << ",\"max_rho_over_run\":" << json_number(r.max_rho_over_run)
          << ",\"min_rho_over_run\":" << json_number(r.min_rho_over_run)
          << ",\"switching_residual_max\":" << json_number(r.switching_residual_max)
          << ",\"pi_l1_max\":" << json_number(r.pi_l1_max)
          << ",\"dpi_l2_max\":" << json_number(r.dpi_l2_max)
          << ",\"I_plain_abs\":" << json_number(r.I_plain_abs)
          << ",\"W_max_drift\":" << json_number(r.W_max_drift);
    } else {
      out << ",\"error\":" << json_string(r.error);
    }
    out << '}' << (k + 1 < report.rows.size() ? "," : "") << '\n';
  }
  out << "  ],\n";
  out << "  \"rho_cauchy_l1\": " << list(report.rho_cauchy_l1) << ",\n";
  out << "  \"w_cauchy_linf\": " << list(report.w_cauchy_linf) << ",\n";
  out << "  \"congestion_fit\": {\"status\":" << json_string(to_string(report.fit.status))
      << ",\"used_rows\":" << report.fit.used_rows;
  if (report.fit.status == FitStatus::fitted) {
    out << ",\"slope\":" << json_number(report.fit.slope)
        << ",\"intercept\":" << json_number(report.fit.intercept)
        << ",\"r2\":" << json_number(report.fit.r2);
  }
  out << "}\n}\n";
  return out.str();
}

}  // namespace congestion
