#include "thermomech/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace thermomech {

std::string format_field(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.16e", value);
  return buffer;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_field(row[i]);
    }
    out << "\r\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    if (first) {
      while (std::getline(ss, field, ',')) table.header.push_back(field);
      first = false;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, field, ',')) {
      size_t used = 0;
      double value;
      try {
        value = std::stod(field, &used);
      } catch (const std::exception&) {
        throw std::runtime_error("non-numeric CSV field: " + field);
      }
      if (used != field.size())
        throw std::runtime_error("non-numeric CSV field: " + field);
      row.push_back(value);
    }
    if (row.size() != table.header.size())
      throw std::runtime_error("ragged CSV row in " + path);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace thermomech
