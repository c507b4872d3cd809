#include "cusplab/tridiag.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>

namespace cusplab {

namespace detail {

double infinity_norm(const TridiagSym& T) {
  const Eigen::Index n = T.size();
  double norm = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = std::fabs(T.diag[i]);
    if (i > 0) row += std::fabs(T.off[i - 1]);
    if (i + 1 < n) row += std::fabs(T.off[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

}  // namespace detail

std::int64_t inertia_below(const TridiagSym& T, double lambda) {
  const Eigen::Index n = T.size();
  if (n == 0) return 0;
  // Safeguard scale per LAPACK: proportional to the largest squared
  // off-diagonal entry, so b^2/d can never overflow while the replacement
  // stays far below any eigenvalue scale of interest.
  double max_offsq = 1.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    max_offsq = std::max(max_offsq, T.off[i] * T.off[i]);
  }
  const double pivmin = std::numeric_limits<double>::min() * max_offsq;

  std::int64_t count = 0;
  double d = T.diag[0] - lambda;
  if (std::fabs(d) < pivmin) d = -pivmin;
  if (d < 0) ++count;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double b = T.off[i - 1];
    d = (T.diag[i] - lambda) - b * b / d;
    if (std::fabs(d) < pivmin) d = -pivmin;
    if (d < 0) ++count;
  }
  return count;
}

std::vector<double> eigenvalues_below(const TridiagSym& T, double lambda,
                                      std::int64_t cap) {
  const std::int64_t m = inertia_below(T, lambda);
  if (m == 0) return {};
  if (m > cap) {
    raise(errc::too_many_eigenvalues,
          "eigenvalues_below: count " + std::to_string(m) + " exceeds cap " +
              std::to_string(cap));
  }

  // Gershgorin lower bound for the whole spectrum.
  const Eigen::Index n = T.size();
  double lo_all = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = T.diag[i];
    if (i > 0) row -= std::fabs(T.off[i - 1]);
    if (i + 1 < n) row -= std::fabs(T.off[i]);
    lo_all = std::min(lo_all, row);
  }

  const double atol = 1e-10 * std::max(1.0, std::fabs(lambda));
  std::vector<double> eigs;
  eigs.reserve(std::size_t(m));
  double floor_lo = lo_all;
  for (std::int64_t j = 1; j <= m; ++j) {
    double lo = floor_lo;
    double hi = lambda;
    while (hi - lo > atol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // step below representable spacing
      if (inertia_below(T, mid) >= j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double e = 0.5 * (lo + hi);
    eigs.push_back(e);
    floor_lo = lo;  // the (j+1)-th eigenvalue is not below the j-th
  }
  return eigs;
}

Eigen::VectorXd dense_eigs_oracle(const TridiagSym& T) {
  if (T.size() > 500) {
    raise(errc::size_exceeded, "dense_eigs_oracle: n > 500");
  }
  if (T.size() == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(T.diag, T.off, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    raise(errc::non_convergent, "dense_eigs_oracle: iteration failed");
  }
  return es.eigenvalues();
}

}  // namespace cusplab
