#include "cusplab/special.hpp"

#include <cmath>
#include <limits>

#include "cusplab/errors.hpp"

namespace cusplab {

namespace {

// Lanczos coefficients for g = 607/128, N = 15 (Godfrey's table). This set
// keeps the relative error of the sum below ~1e-15 for positive arguments.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

double lanczos_gamma_positive(double x) {
  // Valid for x >= 0.5.
  double sum = kLanczos[0];
  for (int i = 1; i < 15; ++i) sum += kLanczos[i] / (x - 1.0 + double(i));
  const double t = x - 0.5 + kLanczosG;
  return std::sqrt(2.0 * M_PI) * std::pow(t, x - 0.5) * std::exp(-t) * sum;
}

}  // namespace

double gamma_fn(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x >= 0.5) return lanczos_gamma_positive(x);
  if (x == std::floor(x)) {
    raise(errc::invalid_config, "gamma_fn: pole at non-positive integer argument");
  }
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  return M_PI / (std::sin(M_PI * x) * lanczos_gamma_positive(1.0 - x));
}

double sphere_volume(int dim) {
  if (dim < 0) raise(errc::invalid_config, "sphere_volume: negative dimension");
  const double k = 0.5 * double(dim + 1);
  return 2.0 * std::pow(M_PI, k) / gamma_fn(k);
}

}  // namespace cusplab
