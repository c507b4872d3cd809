#include "cusplab/radial.hpp"

namespace cusplab {

namespace {

// u^e with fast paths for the exponents the conformal family actually hits.
double pow_u(double u, double e) {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return u;
  if (e == 2.0) return u * u;
  if (e == 3.0) return u * u * u;
  if (e == 0.5) return std::sqrt(u);
  if (e == -0.5) return 1.0 / std::sqrt(u);
  if (e == 1.5) return u * std::sqrt(u);
  if (std::fabs(e - 1.0 / 3.0) < 4e-17) return std::cbrt(u);
  if (std::fabs(e + 1.0 / 3.0) < 4e-17) return 1.0 / std::cbrt(u);
  return std::pow(u, e);
}

}  // namespace

WarpProfile::WarpProfile(const CuspModelSpec& spec) {
  spec.validate();
  p_ = spec.p;
  x0_ = spec.x0;
  c_ = std::pow(x0_, p_ - 1.0);
}

double WarpProfile::t_of_x(double x) const {
  if (!(x > 0.0) || x > x0_ * (1.0 + 1e-12)) {
    raise(errc::domain_exceeded, "t_of_x: x outside (0, x0]");
  }
  if (p_ == 1.0) return std::log(x0_ / x);
  return (c_ - std::pow(x, p_ - 1.0)) / (p_ - 1.0);
}

double WarpProfile::x_of_t(double t) const {
  if (p_ == 1.0) return x0_ * std::exp(-t);
  const double uu = u(t);
  if (!(uu > 0.0)) raise(errc::domain_exceeded, "x_of_t: t beyond the cusp end");
  return std::pow(uu, 1.0 / (p_ - 1.0));
}

double WarpProfile::w(double t) const {
  if (p_ == 0.0) return 1.0;
  if (p_ == 1.0) return x0_ * std::exp(-t);
  const double uu = u(t);
  if (!(uu > 0.0)) raise(errc::domain_exceeded, "w: t beyond the cusp end");
  return pow_u(uu, p_ / (p_ - 1.0));
}

double WarpProfile::sup_w() const {
  if (p_ < 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(x0_, p_);  // w decreases from t = 0 for p > 0; w == 1 for p = 0
}

WarpProfile warp_profile(const CuspModelSpec& spec) { return WarpProfile(spec); }

ModeProblem::ModeProblem(const CuspModelSpec& spec, double mu)
    : warp_(spec), mu_(mu) {
  if (!std::isfinite(mu)) raise(errc::invalid_config, "ModeProblem: mu must be finite");
  const double p = warp_.p();
  expo_ = (p == 1.0) ? 0.0 : p / (1.0 - p);
}

double ModeProblem::V(double t) const {
  const double p = warp_.p();
  if (p == 1.0) return mu_ / warp_.x0() * std::exp(t);
  const double uu = warp_.u(t);
  if (!(uu > 0.0)) raise(errc::domain_exceeded, "V: t beyond the cusp end");
  return mu_ * pow_u(uu, expo_);
}

double ModeProblem::dV(double t) const {
  const double p = warp_.p();
  if (p == 1.0) return V(t);
  if (p == 0.0) return 0.0;
  return p * V(t) / warp_.u(t);
}

ModeProblem mode_problem(const CuspModelSpec& spec, double mu) {
  return ModeProblem(spec, mu);
}

Eigen::MatrixXd first_order_mode_matrix(const ModeProblem& problem, double h,
                                        Eigen::Index n_points) {
  if (!(h > 0.0) || n_points < 8) {
    raise(errc::invalid_config, "first_order_mode_matrix: need h > 0 and N >= 8");
  }
  const double T = double(n_points) * h;
  if (T >= problem.domain_end()) {
    raise(errc::domain_exceeded, "first_order_mode_matrix: grid exceeds the radial domain");
  }
  // Forward difference of (d/dt + V) with the potential averaged onto the
  // half-step collocation points (staggered rows at t = (r + 1/2) h acting
  // on values at t = h, ..., n h; the zero boundary value at t = 0 is folded
  // into the first row). The one-sided recursion then has amplification
  // (1 - hV/2)/(1 + hV/2), bounded for every hV > 0. B^T B discretizes the
  // q_minus problem with a Dirichlet left end; B B^T carries the q_plus
  // partner.
  const Eigen::Index n = n_points;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  B(0, 0) = 1.0 / h + 0.5 * problem.V(0.5 * h);
  for (Eigen::Index r = 1; r < n; ++r) {
    const double vm = 0.5 * problem.V((double(r) + 0.5) * h);
    B(r, r - 1) = vm - 1.0 / h;
    B(r, r) = vm + 1.0 / h;
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  A.topRightCorner(n, n) = B.transpose();
  A.bottomLeftCorner(n, n) = B;
  return A;
}

}  // namespace cusplab
