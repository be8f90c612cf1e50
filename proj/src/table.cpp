#include "mwave/table.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mwave {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_table(std::ostream& os, const Table& t, const std::string& timestamp) {
  if (t.rows.rows() > 0 && t.rows.cols() != static_cast<Eigen::Index>(t.columns.size()))
    throw std::invalid_argument("table rows and column names disagree");
  os << "# format: " << kTableFormat << '\n';
  for (const auto& [key, value] : t.manifest) os << "# " << key << ": " << value << '\n';
  os << "# timestamp: " << timestamp << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (Eigen::Index r = 0; r < t.rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < t.rows.cols(); ++c) os << (c ? "," : "") << format_number(t.rows(r, c));
    os << '\n';
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ParsedTable read_table(std::istream& is) {
  ParsedTable out;
  std::string line;
  std::vector<std::vector<double>> rows;
  bool have_columns = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) continue;
      std::string key = line.substr(2, colon - 2);
      if (key != "timestamp") out.manifest.emplace_back(std::move(key), line.substr(colon + 2));
      continue;
    }
    std::stringstream ss(line);
    std::string field;
    if (!have_columns) {
      while (std::getline(ss, field, ',')) out.columns.push_back(field);
      have_columns = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, field, ',')) {
      std::size_t used = 0;
      row.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::runtime_error("malformed number: " + field);
    }
    if (row.size() != out.columns.size()) throw std::runtime_error("row width differs from header");
    rows.push_back(std::move(row));
  }
  if (!have_columns) throw std::runtime_error("table has no column row");
  out.rows.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(out.columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      out.rows(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return out;
}

}  // namespace mwave
