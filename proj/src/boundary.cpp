#include "cusplab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cusplab {

namespace {

double circle_delta(Spin s) { return s == Spin::nontrivial ? 0.5 : 0.0; }

constexpr std::size_t kGeneratorPullCap = 10'000'000;

}  // namespace

BoundaryModel BoundaryModel::circle(double radius, Spin spin) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    raise(errc::invalid_config, "circle: radius must be positive and finite");
  }
  BoundaryModel m;
  m.circle_ = true;
  m.radius_ = radius;
  m.spin_ = spin;
  m.dim_ = 1;
  m.volume_ = 2.0 * M_PI * radius;
  return m;
}

BoundaryModel BoundaryModel::synthetic(Generator gen, int dimension,
                                       std::optional<double> volume,
                                       std::optional<double> count_majorant) {
  if (!gen) raise(errc::invalid_config, "synthetic: generator required");
  if (dimension < 1) raise(errc::invalid_config, "synthetic: dimension must be >= 1");
  BoundaryModel m;
  m.circle_ = false;
  m.gen_ = std::move(gen);
  m.dim_ = dimension;
  m.volume_ = volume;
  m.majorant_ = count_majorant;
  return m;
}

double BoundaryModel::radius() const {
  if (!circle_) raise(errc::invalid_config, "radius: not a circle model");
  return radius_;
}

Spin BoundaryModel::spin() const {
  if (!circle_) raise(errc::invalid_config, "spin: not a circle model");
  return spin_;
}

std::vector<Mode> enumerate_modes(const BoundaryModel& model, double mu_max) {
  if (!(mu_max >= 0.0) || !std::isfinite(mu_max)) {
    raise(errc::invalid_config, "enumerate_modes: mu_max must be finite and >= 0");
  }
  std::vector<Mode> out;
  if (model.is_circle()) {
    const double r = model.radius();
    const double delta = circle_delta(model.spin());
    const double k_lo = std::ceil(-mu_max * r - delta);
    const double k_hi = std::floor(mu_max * r - delta);
    for (double k = k_lo; k <= k_hi; k += 1.0) {
      out.push_back({(k + delta) / r, 1});
    }
    return out;
  }

  const auto& gen = model.generator();
  double last_abs = 0.0;
  bool terminated = false;
  for (std::size_t j = 0; j < kGeneratorPullCap; ++j) {
    const auto mode = gen(j);
    if (!mode) {
      terminated = true;
      break;
    }
    const double a = std::fabs(mode->mu);
    if (!std::isfinite(mode->mu) || mode->mult < 1) {
      raise(errc::invalid_config, "synthetic generator: bad eigenvalue entry");
    }
    if (j > 0 && a < last_abs * (1.0 - 1e-12) - 1e-300) {
      raise(errc::invalid_config, "synthetic generator: |mu| must be nondecreasing");
    }
    last_abs = std::max(last_abs, a);
    if (a > mu_max) {
      terminated = true;
      break;
    }
    out.push_back(*mode);
  }
  if (!terminated) {
    raise(errc::invalid_config, "enumerate_modes: generator pull cap exceeded");
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Mode& a, const Mode& b) { return a.mu < b.mu; });
  return out;
}

SpectralGapReport spectral_gap(const BoundaryModel& model) {
  if (model.is_circle()) {
    const double delta = circle_delta(model.spin());
    if (delta == 0.0) return {false, 0.0};
    return {true, delta / model.radius()};
  }
  const auto first = model.generator()(0);
  if (!first) return {true, std::numeric_limits<double>::infinity()};
  const double gap = std::fabs(first->mu);
  return {gap > 0.0, gap};
}

double zeta_boundary(const BoundaryModel& model, double s, double eps) {
  if (!(eps > 0.0)) raise(errc::invalid_config, "zeta_boundary: eps must be > 0");
  const auto gap = spectral_gap(model);
  if (!gap.invertible) {
    raise(errc::non_invertible_boundary, "zeta_boundary: boundary has a zero mode");
  }
  if (!(s > double(model.dimension()))) {
    raise(errc::divergent_region,
          "zeta_boundary: need s > dim(M) = " + std::to_string(model.dimension()));
  }

  if (model.is_circle()) {
    const double r = model.radius();
    const double delta = circle_delta(model.spin());  // 1/2 here: invertible circle
    const double beta_lo = std::min(delta, 1.0 - delta);
    // Sum over both progressions (k+delta)/r and (k+1-delta)/r, k >= 0. The
    // monotone-term brackets for each tail past index K are
    //   int_K^inf ((u+beta)/r)^-s du <= sum_{k>=K} <= int_{K-1}^inf,
    // so choosing K with the upper bracket below eps/2 keeps every longer
    // partial sum within eps; the bracket midpoint is then added, which
    // leaves the returned value within the bracket half-width of the full
    // series.
    const double rhs = std::pow(4.0 * std::pow(r, s) / (eps * (s - 1.0)), 1.0 / (s - 1.0));
    if (!(rhs < 5e7)) {
      raise(errc::invalid_config, "zeta_boundary: eps too small for direct summation");
    }
    const std::int64_t K = std::max<std::int64_t>(2, std::int64_t(std::ceil(rhs + 1.0 - beta_lo)) + 1);
    long double acc = 0.0L;
    for (std::int64_t k = K - 1; k >= 0; --k) {
      acc += std::pow((long double)((double(k) + delta) / r), (long double)-s);
      acc += std::pow((long double)((double(k) + 1.0 - delta) / r), (long double)-s);
    }
    const long double rs = std::pow((long double)r, (long double)s);
    const auto tail_int = [&](long double from) {
      return rs * std::pow(from, (long double)(1.0 - s)) / (long double)(s - 1.0);
    };
    for (double beta : {delta, 1.0 - delta}) {
      const long double lo = tail_int((long double)(double(K) + beta));
      const long double hi = tail_int((long double)(double(K) - 1.0 + beta));
      acc += 0.5L * (lo + hi);
    }
    return double(acc);
  }

  // Synthetic model: sum the enumerated spectrum up to a window whose tail is
  // certified by the declared counting majorant #{|mu|<=u} <= A (1+u)^m.
  const int m = model.dimension();
  double window = 0.0;
  if (model.count_majorant()) {
    const double A = *model.count_majorant();
    const double M = std::pow(2.0 * s * A * std::pow(2.0, m) / (eps * (s - double(m))),
                              1.0 / (s - double(m)));
    window = std::max(1.0, M);
  } else {
    // Without a majorant only a finite spectrum is admissible.
    const auto& gen = model.generator();
    bool finite = false;
    std::size_t j = 0;
    for (; j < kGeneratorPullCap; ++j) {
      const auto mode = gen(j);
      if (!mode) {
        finite = true;
        break;
      }
      window = std::max(window, std::fabs(mode->mu));
    }
    if (!finite) {
      raise(errc::invalid_config,
            "zeta_boundary: synthetic model needs a count majorant for tail bounds");
    }
  }
  const auto modes = enumerate_modes(model, window);
  std::vector<long double> terms;
  terms.reserve(modes.size());
  for (const auto& mode : modes) {
    terms.push_back((long double)(mode.mult) *
                    std::pow((long double)std::fabs(mode.mu), (long double)-s));
  }
  std::sort(terms.begin(), terms.end());  // small terms first
  long double acc = 0.0L;
  for (long double t : terms) acc += t;
  return double(acc);
}

}  // namespace cusplab
