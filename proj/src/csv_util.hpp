#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lampwalk::detail {

std::vector<std::string> split_csv_line(const std::string& line);

// Reads a numeric CSV whose header starts with the given columns. Lines
// beginning with '#' and blank lines are skipped; extra columns are ignored.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                  const std::vector<std::string>& columns);

}  // namespace lampwalk::detail
