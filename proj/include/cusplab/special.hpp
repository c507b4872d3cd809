#pragma once

namespace cusplab {

// Gamma function on the real line (Lanczos sum with reflection for x < 1/2).
// Relative accuracy is better than 1e-12 away from the poles at 0, -1, -2, ...
double gamma_fn(double x);

// Volume of the round unit sphere S^dim embedded in R^{dim+1}.
double sphere_volume(int dim);

}  // namespace cusplab
