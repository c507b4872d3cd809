#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cusplab/errors.hpp"

namespace cusplab {

enum class Spin { trivial, nontrivial };

struct Mode {
  double mu = 0.0;
  std::int64_t mult = 1;
};

// Closed boundary manifold with an explicitly enumerable Dirac spectrum.
// Circle: spectrum (k + delta)/r, k in Z, delta = 0 (trivial spin) or 1/2
// (nontrivial spin), all multiplicities 1. Synthetic: caller-supplied
// generator yielding signed eigenvalues with nondecreasing |mu|;
// std::nullopt terminates a finite spectrum.
class BoundaryModel {
 public:
  using Generator = std::function<std::optional<Mode>(std::size_t)>;

  static BoundaryModel circle(double radius, Spin spin);
  // `count_majorant` A declares #{|mu| <= u} <= A * (1 + u)^dimension and is
  // required for zeta tail bounds on infinite synthetic spectra. `volume`
  // declares Vol(M,h) for volume-based predictions.
  static BoundaryModel synthetic(Generator gen, int dimension,
                                 std::optional<double> volume = std::nullopt,
                                 std::optional<double> count_majorant = std::nullopt);

  int dimension() const { return dim_; }
  bool is_circle() const { return circle_; }
  double radius() const;
  Spin spin() const;
  std::optional<double> volume() const { return volume_; }
  std::optional<double> count_majorant() const { return majorant_; }
  const Generator& generator() const { return gen_; }

 private:
  BoundaryModel() = default;
  bool circle_ = false;
  double radius_ = 1.0;
  Spin spin_ = Spin::nontrivial;
  Generator gen_;
  int dim_ = 1;
  std::optional<double> volume_;
  std::optional<double> majorant_;
};

// Every spectrum element with |mu| <= mu_max, sorted by value.
std::vector<Mode> enumerate_modes(const BoundaryModel& model, double mu_max);

struct SpectralGapReport {
  bool invertible = false;
  double gap = 0.0;  // smallest |mu|; 0 when a zero mode exists
};

SpectralGapReport spectral_gap(const BoundaryModel& model);

// Sum of mult * |mu|^-s within +-eps. The truncation index comes from a
// rigorous integral tail bound; what is returned is the plain partial sum,
// so any longer partial sum stays within eps of it.
double zeta_boundary(const BoundaryModel& model, double s, double eps);

}  // namespace cusplab
