#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>

#include "cusplab/errors.hpp"

namespace cusplab {

// Model cylinder (0, x0] x M carrying x^{2p} (dx^2/x^4 + h). Dirichlet
// conditions are imposed at the x = x0 end of every reduced problem.
struct CuspModelSpec {
  int n = 2;        // manifold dimension
  double p = 1.0;   // conformal power
  double x0 = 1.0;  // cylinder cutoff

  void validate() const {
    if (n < 2) raise(errc::invalid_config, "CuspModelSpec: need n >= 2");
    if (!(x0 > 0.0) || !std::isfinite(x0)) {
      raise(errc::invalid_config, "CuspModelSpec: need x0 > 0");
    }
    if (!std::isfinite(p)) raise(errc::invalid_config, "CuspModelSpec: p must be finite");
  }
};

// Arclength change of variables t(x) = int_x^{x0} s^{p-2} ds and the warp
// factor w(t) = x(t)^p. The radial domain is [0, inf) for p <= 1 and
// [0, t_max) with t_max = x0^{p-1}/(p-1) for p > 1.
class WarpProfile {
 public:
  explicit WarpProfile(const CuspModelSpec& spec);

  double p() const { return p_; }
  double x0() const { return x0_; }

  double t_of_x(double x) const;
  double x_of_t(double t) const;
  double w(double t) const;

  // x(t)^{p-1}, the linear-in-t quantity everything is expressed through.
  double u(double t) const { return c_ - (p_ - 1.0) * t; }

  double sup_w() const;  // max of w over the domain (attained at t = 0 for p >= 0)
  double t_end() const {
    return bounded_domain() ? c_ / (p_ - 1.0) : std::numeric_limits<double>::infinity();
  }
  bool bounded_domain() const { return p_ > 1.0; }

 private:
  double p_ = 1.0;
  double x0_ = 1.0;
  double c_ = 1.0;  // x0^{p-1}
};

WarpProfile warp_profile(const CuspModelSpec& spec);

// Radial reduction of a single boundary mode: potential V = mu / w and the
// supersymmetric pair q_{+-} = V^2 +- V'. In arclength coordinates with the
// spinor rescaled by w^{(n-1)/2} the mode operator is the 1D Dirac system
// with potential V, whose square decouples into -d^2/dt^2 + q_{+-}.
class ModeProblem {
 public:
  ModeProblem(const CuspModelSpec& spec, double mu);

  double mu() const { return mu_; }
  const WarpProfile& warp() const { return warp_; }

  double V(double t) const;
  double dV(double t) const;
  double q_plus(double t) const {
    const double v = V(t);
    return v * v + dV(t);
  }
  double q_minus(double t) const {
    const double v = V(t);
    return v * v - dV(t);
  }
  double domain_end() const { return warp_.t_end(); }

 private:
  WarpProfile warp_;
  double mu_ = 0.0;
  double expo_ = 0.0;  // p/(1-p) for p != 1; V = mu * u^expo
};

ModeProblem mode_problem(const CuspModelSpec& spec, double mu);

// Discrete oracle for the first-order 2x2 radial Dirac system: the
// 2N x 2N block matrix [[0, B^T], [B, 0]] with B the forward difference of
// (d/dt + V) on nodes t_i = i*h (potential averaged to the half-step rows,
// zero boundary value at t = 0). Its spectrum is exactly +- the singular
// values of B; the squared nonzero eigenvalues approximate the union of the
// q_{+-} Schroedinger spectra.
Eigen::MatrixXd first_order_mode_matrix(const ModeProblem& problem, double h,
                                        Eigen::Index n_points);

}  // namespace cusplab
