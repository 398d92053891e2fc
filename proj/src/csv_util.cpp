#include "csv_util.hpp"

#include <fstream>

#include "lampwalk/errors.hpp"

namespace lampwalk::detail {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path,
                                                  const std::vector<std::string>& columns) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::string line;
  bool have_header = false;
  std::size_t width = 0;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (!have_header) {
      if (fields.size() < columns.size())
        throw InvalidArgument(path.string() + ": header has too few columns");
      for (std::size_t c = 0; c < columns.size(); ++c)
        if (fields[c] != columns[c])
          throw InvalidArgument(path.string() + ": expected column '" + columns[c] +
                                "', found '" + fields[c] + "'");
      width = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != width)
      throw InvalidArgument(path.string() + ":" + std::to_string(line_no) +
                            ": wrong number of fields");
    std::vector<double> row;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(fields[c], &used));
        if (used != fields[c].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw InvalidArgument(path.string() + ":" + std::to_string(line_no) +
                              ": bad number '" + fields[c] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw InvalidArgument(path.string() + ": missing header");
  return rows;
}

}  // namespace lampwalk::detail
