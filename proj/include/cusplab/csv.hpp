#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cusplab {

// Shortest round-trip decimal form, '.' decimal point, no locale.
std::string format_number(double v);
std::string format_number(std::int64_t v);

struct CountRow {
  double lambda = 0.0;
  std::int64_t count = 0;
  double semiclassical = 0.0;
  double seconds = 0.0;
};

// Exactly `lambda,count,semiclassical,seconds` + LF rows, UTF-8. When
// `timing` is off the seconds column is written as 0 so that repeated runs
// are byte-identical.
std::string count_csv(const std::vector<CountRow>& rows, bool timing);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace cusplab
