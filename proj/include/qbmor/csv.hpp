#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace qbmor::csv {

/// 17 significant digits: round-trips any double exactly. NaN is written as
/// an empty cell.
inline std::string num(double v) {
  if (std::isnan(v)) return {};
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline double parse(const std::string& cell) {
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(cell, &used);
  if (used != cell.size()) throw std::invalid_argument("bad number '" + cell + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace qbmor::csv
