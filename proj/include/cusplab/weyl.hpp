#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cusplab/boundary.hpp"
#include "cusplab/radial.hpp"

namespace cusplab {

enum class Regime { volume_dominated, critical, cusp_dominated };

const char* to_string(Regime r);

// Predicted leading asymptotics N(lambda) ~ C lambda^a (log lambda)^k with
// the regime decided by p against 1/n.
struct WeylPrediction {
  Regime regime = Regime::volume_dominated;
  double exponent = 2.0;  // a
  int log_power = 0;      // k
  double constant = 0.0;  // C

  struct Ingredients {
    double vol_x = 0.0;      // Vol(X, g_p) when finite
    double vol_m = 0.0;      // Vol(M, h)
    double vol_sphere = 0.0; // Vol(S^{n-1})
    double zeta_value = 0.0; // zeta(D^h, 1/p - 1) in the cusp regime
    double epsilon_n = 0.0;  // 1 for n odd, 2 for n even
  } ingredients;
};

// Vol(X, g_p) = Vol(M, h) * x0^{np-1} / (np - 1); infinite for p <= 1/n.
double total_volume(const CuspModelSpec& spec, const BoundaryModel& model);

WeylPrediction predict(const CuspModelSpec& spec, const BoundaryModel& model);

// Tauberian passage from a zeta pole of order k at s = a with leading
// Laurent coefficient C to the counting coefficient C / (a (k-1)!).
double delange_coefficient(double c_pole, double a, int k);

// Leading coefficient of the double pole feeding the critical regime;
// delange_coefficient(critical_pole_coefficient(...), n, 2) recovers the
// critical constant.
double critical_pole_coefficient(const CuspModelSpec& spec, const BoundaryModel& model);

struct FitResult {
  double a_fit = 0.0;
  double c_fit = 0.0;
  int k_fit = 0;
  double residual = 0.0;  // RMS of log-differences
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::int64_t samples = 0;
};

enum class KChoice { k0, k1, free_k };

using CountSample = std::pair<double, double>;  // (lambda, N)

// Least squares of log N against log lambda (plus log log lambda when k = 1).
FitResult fit_asymptotics(const std::vector<CountSample>& samples, KChoice k);

// Two-stage variant: freeze the exponent and fit the constant alone.
FitResult fit_constant(const std::vector<CountSample>& samples, double a_frozen,
                       int k);

struct CriticalFit {
  double slope = 0.0;      // coefficient of log lambda in N / lambda^n
  double intercept = 0.0;
  double residual = 0.0;
};

// Regression of N / lambda^n against log lambda, the critical-regime probe.
CriticalFit fit_critical_slope(const std::vector<CountSample>& samples, int n);

// Geometric sample grid for log-log regressions.
std::vector<double> geometric_grid(double lambda_min, double lambda_max, int points);

}  // namespace cusplab
