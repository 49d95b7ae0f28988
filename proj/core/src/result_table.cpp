#include "mwdiff/result_table.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "mwdiff/errors.hpp"
#include "mwdiff/version.hpp"

namespace mwdiff {

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw domain_error("ResultTable::add_row: row width does not match columns");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary); // binary: byte-identical across runs
  if (!out) throw config_error("cannot open output file: " + path);

  out << "# mwdiff " << version_string << "\n";
  out << "# command = " << table.command << "\n";
  for (const auto& [key, value] : table.metadata) out << "# " << key << " = " << value << "\n";

  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
  if (!out) throw config_error("write failed: " + path);
}

void write_metadata_json(const ResultTable& table, const std::string& csv_path) {
  nlohmann::ordered_json j;
  j["tool"] = "mwdiff";
  j["version"] = version_string;
  j["command"] = table.command;
  nlohmann::ordered_json meta;
  for (const auto& [key, value] : table.metadata) meta[key] = value;
  j["metadata"] = meta;
  j["columns"] = table.columns;
  j["row_count"] = table.rows.size();

  const std::string path = csv_path + ".meta.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw config_error("write failed: " + path);
}

} // namespace mwdiff
