#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace logbbm {

// 17 significant digits: enough for a lossless 64-bit IEEE-754 round trip.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string csv_to_string(const CsvTable& table);

// Both writers stage to a sibling temp file and rename into place, so a
// failure never leaves a partial file at the destination.
void write_text_file(const std::filesystem::path& path, const std::string& content);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

}  // namespace logbbm
