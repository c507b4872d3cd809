#include "cusplab/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cusplab/errors.hpp"

namespace cusplab {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_number(std::int64_t v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string count_csv(const std::vector<CountRow>& rows, bool timing) {
  std::string out = "lambda,count,semiclassical,seconds\n";
  for (const auto& row : rows) {
    out += format_number(row.lambda);
    out += ',';
    out += format_number(row.count);
    out += ',';
    out += format_number(row.semiclassical);
    out += ',';
    out += timing ? format_number(row.seconds) : std::string("0");
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) raise(errc::invalid_config, "cannot open for writing: " + path);
  f.write(content.data(), std::streamsize(content.size()));
  if (!f) raise(errc::invalid_config, "write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) raise(errc::invalid_config, "cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace cusplab
