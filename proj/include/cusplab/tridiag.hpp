#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "cusplab/errors.hpp"

namespace cusplab {

// Symmetric tridiagonal matrix, immutable after construction. For the
// standard second-order Dirichlet scheme the off-diagonal is -1/h^2.
struct TridiagSym {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;  // length size()-1
  double h = 1.0;       // grid step the matrix was built with
  double t_start = 0.0; // left end of the discretized interval

  Eigen::Index size() const { return diag.size(); }
};

// Central-difference discretization of -d^2/dt^2 + q on [t_a, t_b] with
// Dirichlet conditions at both ends. Interior nodes t_i = t_a + i*h,
// i = 1..n_points, h = (t_b - t_a)/(n_points + 1).
template <class Potential>
TridiagSym discretize(Potential&& q, double t_a, double t_b, Eigen::Index n_points) {
  if (!(t_b > t_a)) raise(errc::invalid_config, "discretize: need t_b > t_a");
  if (n_points < 2) raise(errc::invalid_config, "discretize: need at least 2 points");
  TridiagSym T;
  const double h = (t_b - t_a) / double(n_points + 1);
  T.h = h;
  T.t_start = t_a;
  T.diag.resize(n_points);
  T.off = Eigen::VectorXd::Constant(n_points - 1, -1.0 / (h * h));
  const double d0 = 2.0 / (h * h);
  for (Eigen::Index i = 0; i < n_points; ++i) {
    const double t = t_a + double(i + 1) * h;
    const double qi = q(t);
    if (!std::isfinite(qi)) {
      raise(errc::non_finite_potential, "discretize: q is not finite on the grid");
    }
    T.diag[i] = d0 + qi;
  }
  return T;
}

// Number of eigenvalues strictly below lambda, from the signs of the pivots
// of the shifted LDL^T factorization. Near-zero pivots are replaced by
// -pivmin with the LAPACK scale pivmin = dbl_min * max(off^2), so every
// shift is admissible and division can never overflow; counts are exact for
// shifts that are not pathologically close to an eigenvalue.
std::int64_t inertia_below(const TridiagSym& T, double lambda);

// All eigenvalues strictly below lambda, each to absolute accuracy
// 1e-10 * max(1, |lambda|), via bisection driven by inertia_below.
std::vector<double> eigenvalues_below(const TridiagSym& T, double lambda,
                                      std::int64_t cap = 10000);

// Full spectrum via an orthogonal-similarity iteration (test oracle,
// n <= 500). Returned ascending.
Eigen::VectorXd dense_eigs_oracle(const TridiagSym& T);

namespace detail {

// Pivot sign count shared by the stored-matrix path and the streaming path
// used by the counting layer. `diag_at(i)` must return the i-th diagonal
// entry; the off-diagonal is the constant -1/h^2 scheme value squared.
template <class DiagAt>
std::int64_t sturm_count_stream(DiagAt&& diag_at, std::int64_t n, double offsq,
                                double shift, double pivmin) {
  std::int64_t count = 0;
  double d = diag_at(0) - shift;
  if (std::fabs(d) < pivmin) d = -pivmin;
  if (d < 0) ++count;
  for (std::int64_t i = 1; i < n; ++i) {
    d = (diag_at(i) - shift) - offsq / d;
    if (std::fabs(d) < pivmin) d = -pivmin;
    if (d < 0) ++count;
  }
  return count;
}

double infinity_norm(const TridiagSym& T);

}  // namespace detail

}  // namespace cusplab
