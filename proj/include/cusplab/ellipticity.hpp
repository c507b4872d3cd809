#pragma once

#include <Eigen/Core>
#include <vector>

#include "cusplab/boundary.hpp"

namespace cusplab {

// Fourier-truncated normal family on a circle boundary:
//   P(xi) = D + i xi (1 - c(alpha)),
// assembled in the basis e^{i (k + delta) theta}, |k| <= K, where D is the
// circle Dirac operator (diagonal entries (k + delta)/r) and c(alpha) is
// i times the Toeplitz matrix of the Fourier coefficients of a(theta) for
// alpha = a(theta) d theta. On a 1-manifold d alpha = 0, and a positive
// conformal factor is dropped since conjugating by it cannot change
// invertibility.
struct NormalFamilySpec {
  double radius = 1.0;
  Spin spin = Spin::nontrivial;
  std::vector<double> cos_coeffs;  // a(theta) = c0 + sum_m c_m cos(m theta) + s_m sin(m theta)
  std::vector<double> sin_coeffs;  // s_1, s_2, ... (no constant term)
  std::vector<double> xi_grid;     // finite, symmetric about 0, contains 0
  int truncation = 16;             // Fourier modes |k| <= K

  void validate() const;
};

struct EllipticityVerdict {
  bool fully_elliptic = false;
  double min_sigma = 0.0;  // smallest singular value found over the xi grid
  double worst_xi = 0.0;
  bool truncation_converged = false;
  int truncation_used = 0;
};

// The (2K+1) x (2K+1) family member at parameter xi.
Eigen::MatrixXcd assemble_family(const NormalFamilySpec& spec, double xi);
Eigen::MatrixXcd assemble_family(const NormalFamilySpec& spec, double xi, int K);

// Smallest singular value by inverse iteration on P*P with a deterministic
// start vector; returns 0 for a singular matrix.
double smallest_singular_value(const Eigen::MatrixXcd& M);

// Minimizes the smallest singular value over the xi grid, doubling K until
// the minimum stabilizes (change < 1e-6); verdict threshold 1e-8.
EllipticityVerdict scan_invertibility(const NormalFamilySpec& spec,
                                      double sigma_threshold = 1e-8);

// Symmetric xi grid with `half_points` samples per side plus 0.
std::vector<double> symmetric_xi_grid(double xi_max, int half_points);

}  // namespace cusplab
