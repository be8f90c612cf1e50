#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mwave {

inline constexpr const char* kTableFormat = "mwave-table 1";

/// Delimited numeric table with a comment-prefixed manifest. Rows are
/// rendered with 12 significant digits and a single comma between fields.
struct Table {
  std::vector<std::pair<std::string, std::string>> manifest;
  std::vector<std::string> columns;
  Eigen::MatrixXd rows;
};

/// %.12g.
std::string format_number(double x);

/// Writes "# format", the manifest entries, "# timestamp: ...", the column
/// row and the data rows.
void write_table(std::ostream& os, const Table& t, const std::string& timestamp);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

struct ParsedTable {
  std::vector<std::pair<std::string, std::string>> manifest;  // timestamp excluded
  std::vector<std::string> columns;
  Eigen::MatrixXd rows;
};

/// Inverse of write_table. Throws std::runtime_error on malformed input.
ParsedTable read_table(std::istream& is);

}  // namespace mwave
