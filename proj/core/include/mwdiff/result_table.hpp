#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mwdiff {

// Plot-ready numeric table with an embedded metadata block. Written as CSV
// with '#'-prefixed metadata lines plus a machine-readable JSON sidecar.
struct ResultTable {
  std::string command;                                      // producing subcommand
  std::vector<std::pair<std::string, std::string>> metadata; // config echo, seeds, ...
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

// Deterministic 12-significant-digit formatting used for every number we emit.
std::string format_double(double v);

void write_csv(const ResultTable& table, const std::string& path);

// Sidecar next to the CSV (path + ".meta.json").
void write_metadata_json(const ResultTable& table, const std::string& csv_path);

} // namespace mwdiff
