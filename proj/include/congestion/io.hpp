#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "congestion/model.hpp"
#include "congestion/records.hpp"
#include "congestion/sweep.hpp"

namespace congestion {

// 17 significant digits: enough to round-trip every double.
std::string format_double(double v);

void write_snapshot_csv(std::ostream& out, const State& s, const Grid& g,
                        const ModelParams& params);
void write_snapshot_csv(const std::string& path, const State& s, const Grid& g,
                        const ModelParams& params);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Index of a named column; ConfigError when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

std::string record_json(const DiagnosticsRecord& rec);
std::string record_csv_header();
std::string record_csv_row(const DiagnosticsRecord& rec);

void write_records(const std::string& path, const std::vector<DiagnosticsRecord>& recs,
                   const std::string& format);

std::string sweep_csv(const SweepReport& report);
std::string sweep_summary_json(const SweepReport& report);

}  // namespace congestion
