#include "cusplab/ellipticity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace cusplab {

void NormalFamilySpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    raise(errc::invalid_config, "NormalFamilySpec: radius must be positive");
  }
  if (truncation < 8) raise(errc::invalid_config, "NormalFamilySpec: need K >= 8");
  if (xi_grid.empty()) raise(errc::invalid_config, "NormalFamilySpec: empty xi grid");
  bool has_zero = false;
  for (double xi : xi_grid) {
    if (!std::isfinite(xi)) raise(errc::invalid_config, "NormalFamilySpec: xi not finite");
    if (xi == 0.0) has_zero = true;
    if (std::find(xi_grid.begin(), xi_grid.end(), -xi) == xi_grid.end()) {
      raise(errc::invalid_config, "NormalFamilySpec: xi grid must be symmetric about 0");
    }
  }
  if (!has_zero) raise(errc::invalid_config, "NormalFamilySpec: xi grid must contain 0");
}

Eigen::MatrixXcd assemble_family(const NormalFamilySpec& spec, double xi, int K) {
  using complexd = std::complex<double>;
  const double delta = spec.spin == Spin::nontrivial ? 0.5 : 0.0;
  const int m = 2 * K + 1;
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(m, m);
  // D + i xi on the diagonal.
  for (int j = 0; j < m; ++j) {
    const double k = double(j - K);
    P(j, j) = complexd((k + delta) / spec.radius, xi);
  }
  // i xi * (-c(alpha)) = xi * T_a with T_a the Hermitian Toeplitz matrix of
  // the Fourier coefficients of a.
  const auto add_band = [&](int offset, complexd value) {
    for (int j = 0; j < m; ++j) {
      const int l = j + offset;
      if (l >= 0 && l < m) P(j, l) += value;
    }
  };
  if (!spec.cos_coeffs.empty()) {
    add_band(0, complexd(xi * spec.cos_coeffs[0], 0.0));
  }
  for (std::size_t band = 1; band < std::max(spec.cos_coeffs.size(),
                                             spec.sin_coeffs.size() + 1);
       ++band) {
    const double c = band < spec.cos_coeffs.size() ? spec.cos_coeffs[band] : 0.0;
    const double s = band - 1 < spec.sin_coeffs.size() ? spec.sin_coeffs[band - 1] : 0.0;
    if (c == 0.0 && s == 0.0) continue;
    // Entry (j, l) of the multiplication matrix carries hat a_{j-l} with
    // hat a_{+m} = (c_m - i s_m)/2 and hat a_{-m} = (c_m + i s_m)/2.
    add_band(int(band), xi * complexd(0.5 * c, 0.5 * s));    // l - j = +band -> hat a_{-band}
    add_band(-int(band), xi * complexd(0.5 * c, -0.5 * s));  // l - j = -band -> hat a_{+band}
  }
  return P;
}

Eigen::MatrixXcd assemble_family(const NormalFamilySpec& spec, double xi) {
  spec.validate();
  return assemble_family(spec, xi, spec.truncation);
}

double smallest_singular_value(const Eigen::MatrixXcd& M) {
  const Eigen::Index m = M.rows();
  if (m == 0 || m != M.cols()) {
    raise(errc::invalid_config, "smallest_singular_value: need a square matrix");
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  Eigen::VectorXcd z(m);
  for (Eigen::Index j = 0; j < m; ++j) z(j) = std::complex<double>(1.0 / double(j + 1), 0.0);
  z.normalize();
  double nu_prev = 0.0;
  for (int it = 0; it < 200; ++it) {
    // One step of inverse iteration with (P* P)^{-1} = P^{-1} P^{-*}.
    Eigen::VectorXcd y = lu.adjoint().solve(z);
    Eigen::VectorXcd x = lu.solve(y);
    if (!x.allFinite()) return 0.0;
    const double nu = x.norm();
    if (!(nu > 0.0)) return 0.0;
    if (nu > 1e300) return 0.0;
    z = x / nu;
    if (it > 2 && std::fabs(nu - nu_prev) <= 1e-13 * nu) {
      return 1.0 / std::sqrt(nu);
    }
    nu_prev = nu;
  }
  return 1.0 / std::sqrt(nu_prev);
}

namespace {

struct GridMin {
  double min_sigma = std::numeric_limits<double>::infinity();
  double worst_xi = 0.0;
};

GridMin grid_minimum(const NormalFamilySpec& spec, int K) {
  GridMin gm;
  for (double xi : spec.xi_grid) {
    const double sigma = smallest_singular_value(assemble_family(spec, xi, K));
    if (sigma < gm.min_sigma) {
      gm.min_sigma = sigma;
      gm.worst_xi = xi;
    }
  }
  return gm;
}

}  // namespace

EllipticityVerdict scan_invertibility(const NormalFamilySpec& spec,
                                      double sigma_threshold) {
  spec.validate();
  int K = spec.truncation;
  GridMin current = grid_minimum(spec, K);
  for (int doubling = 0; doubling < 3; ++doubling) {
    const int K2 = 2 * K;
    const GridMin refined = grid_minimum(spec, K2);
    if (std::fabs(refined.min_sigma - current.min_sigma) < 1e-6) {
      EllipticityVerdict v;
      v.min_sigma = refined.min_sigma;
      v.worst_xi = refined.worst_xi;
      v.truncation_converged = true;
      v.truncation_used = K2;
      v.fully_elliptic = refined.min_sigma > sigma_threshold;
      return v;
    }
    current = refined;
    K = K2;
  }
  raise(errc::non_convergent_truncation,
        "scan_invertibility: the grid minimum kept moving under truncation doubling");
}

std::vector<double> symmetric_xi_grid(double xi_max, int half_points) {
  if (!(xi_max > 0.0) || half_points < 1) {
    raise(errc::invalid_config, "symmetric_xi_grid: bad parameters");
  }
  std::vector<double> grid;
  grid.reserve(2 * std::size_t(half_points) + 1);
  for (int i = half_points; i >= 1; --i) grid.push_back(-xi_max * double(i) / half_points);
  grid.push_back(0.0);
  for (int i = 1; i <= half_points; ++i) grid.push_back(xi_max * double(i) / half_points);
  return grid;
}

}  // namespace cusplab
