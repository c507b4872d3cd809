#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cusplab/boundary.hpp"
#include "cusplab/radial.hpp"

namespace cusplab {

struct Tolerances {
  double points_per_wavelength = 10.0;  // grid density at wavenumber lambda
  double domain_safety_margin = 0.2;    // mode cutoff and turning-point margin
  double convergence = 0.01;            // relative count drift across refinements
  int max_refinements = 6;

  void validate() const;
};

struct CountRequest {
  CuspModelSpec spec;
  BoundaryModel model;
  double lambda = 1.0;
  Tolerances tol;
  int jobs = 1;
};

struct CountResult {
  std::int64_t count = 0;
  std::int64_t modes_used = 0;  // signed boundary modes inside the cutoff
  double semiclassical = 0.0;
  std::vector<std::pair<double, std::int64_t>> grid_levels;  // (h, count)
  double wallclock_seconds = 0.0;
};

// mu_max = lambda * sup w * (1 + margin), enlarged until the first excluded
// mode demonstrably contributes no states below lambda^2.
double mode_cutoff(const CuspModelSpec& spec, const BoundaryModel& model,
                   double lambda, const Tolerances& tol = {});

// Global counting function: for every boundary mode (mu, mult) inside the
// cutoff, Dirichlet counts of both Schroedinger components below lambda^2 on
// turning-point-truncated domains, refined (h -> h/2, T -> 1.5 T) until the
// total drifts by less than the convergence threshold.
CountResult count_states(const CountRequest& req);

// Phase-space oracle: (1/pi) sum over modes and components of
// int sqrt(max(0, lambda^2 - q(t))) dt, adaptive quadrature.
double semiclassical_count(const CuspModelSpec& spec, const BoundaryModel& model,
                           double lambda);

struct DriftReport {
  std::vector<double> deltas;
  std::vector<std::vector<double>> eigenvalues;  // per delta, ascending, both components
  double max_drift = 0.0;  // max over eigenvalue index of (max - min) across deltas
};

// Horn-tip truncation study (p > 1): eigenvalues below lambda_max^2 on
// [0, t_max - delta] as delta varies.
DriftReport bc_sensitivity(const CuspModelSpec& spec, double mu, double lambda_max,
                           const std::vector<double>& deltas,
                           Eigen::Index grid_points = 4000);

// Counts of component eigenvalues inside [a^2, b^2] per domain length T,
// over all modes with |mu| <= b; the grid step is shared across T values.
std::vector<std::pair<double, std::int64_t>> essential_spectrum_scan(
    const CuspModelSpec& spec, const BoundaryModel& model, double window_a,
    double window_b, const std::vector<double>& t_list,
    double points_per_wavelength = 10.0);

}  // namespace cusplab
