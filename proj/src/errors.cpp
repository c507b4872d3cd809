#include "cusplab/errors.hpp"

namespace cusplab {

const char* to_string(errc c) {
  switch (c) {
    case errc::invalid_config: return "InvalidConfig";
    case errc::non_finite_potential: return "NonFinitePotential";
    case errc::too_many_eigenvalues: return "TooManyEigenvalues";
    case errc::size_exceeded: return "SizeExceeded";
    case errc::domain_exceeded: return "DomainExceeded";
    case errc::non_invertible_boundary: return "NonInvertibleBoundary";
    case errc::divergent_region: return "DivergentRegion";
    case errc::infinite_volume: return "InfiniteVolume";
    case errc::not_pure_point: return "NotPurePoint";
    case errc::zero_mode_unsafe: return "ZeroModeUnsafe";
    case errc::non_convergent: return "NonConvergent";
    case errc::non_convergent_truncation: return "NonConvergentTruncation";
    case errc::degenerate_window: return "DegenerateWindow";
    case errc::non_positive_counts: return "NonPositiveCounts";
  }
  return "Error";
}

void raise(errc code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace cusplab
