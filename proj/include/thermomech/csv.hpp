#pragma once

#include <string>
#include <vector>

namespace thermomech {

// Numeric CSV table with a header row. Values render with 17 significant
// digits in scientific notation so that output is byte-reproducible and
// round-trips exactly.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_field(double value);

void write_csv(const std::string& path, const CsvTable& table);

CsvTable read_csv(const std::string& path);

}  // namespace thermomech
