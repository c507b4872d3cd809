#pragma once

#include <stdexcept>
#include <string>

namespace cusplab {

// Failure categories. The CLI maps these onto process exit codes:
// invalid input -> 1, non-convergence -> 2, violated mathematical
// hypothesis -> 3.
enum class errc {
  invalid_config,
  non_finite_potential,
  too_many_eigenvalues,
  size_exceeded,
  domain_exceeded,
  non_invertible_boundary,
  divergent_region,
  infinite_volume,
  not_pure_point,
  zero_mode_unsafe,
  non_convergent,
  non_convergent_truncation,
  degenerate_window,
  non_positive_counts,
};

const char* to_string(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] void raise(errc code, const std::string& what);

}  // namespace cusplab
