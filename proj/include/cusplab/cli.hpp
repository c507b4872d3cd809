#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cusplab {

// Batch experiment driver. Exit codes: 0 success, 1 invalid config or I/O,
// 2 non-convergence, 3 violated mathematical hypothesis.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cusplab
