#include "cusplab/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "cusplab/parallel.hpp"
#include "cusplab/quadrature.hpp"
#include "cusplab/tridiag.hpp"

namespace cusplab {

void Tolerances::validate() const {
  if (!(points_per_wavelength >= 10.0)) {
    raise(errc::invalid_config, "tolerances: points_per_wavelength must be >= 10");
  }
  if (!(domain_safety_margin >= 0.2)) {
    raise(errc::invalid_config, "tolerances: domain_safety_margin must be >= 0.2");
  }
  if (!(convergence > 0.0) || !(convergence < 1.0)) {
    raise(errc::invalid_config, "tolerances: convergence must lie in (0,1)");
  }
  if (max_refinements < 1 || max_refinements > 30) {
    raise(errc::invalid_config, "tolerances: max_refinements out of range");
  }
}

namespace {

double qmin_at(const ModeProblem& mp, double t) {
  const double v = mp.V(t);
  return v * v - std::fabs(mp.dV(t));
}

// Smallest T such that the lower component potential stays above `target`
// from T on (T = 0 when that already holds on the whole domain). The
// potentials are eventually monotone, so checking T plus a lookahead point
// suffices; the emptiness probe downstream re-verifies.
double turning_domain(const ModeProblem& mp, double target) {
  const WarpProfile& wp = mp.warp();
  const double amu = std::fabs(mp.mu());
  if (!(amu > 0.0)) {
    raise(errc::invalid_config, "turning_domain: zero mode has no turning point");
  }
  const double t_end = wp.t_end();
  double T = 0.0;
  const double w_target = amu / std::sqrt(target);
  if (w_target < wp.sup_w()) {
    if (wp.p() == 1.0) {
      T = std::log(wp.x0() / w_target);
    } else {
      const double u_t = std::pow(w_target, (wp.p() - 1.0) / wp.p());
      T = (wp.u(0.0) - u_t) / (wp.p() - 1.0);
    }
    T = std::max(T, 0.0);
  }
  const auto grow = [&](double t) {
    if (std::isinf(t_end)) return t > 0.0 ? 1.1 * t + 0.1 : 0.5;
    return t_end - 0.5 * (t_end - t);
  };
  for (int it = 0; it < 400; ++it) {
    const double look = std::isinf(t_end)
                            ? T + std::max(0.1, 0.05 * T)
                            : T + 0.25 * (t_end - T);
    if (qmin_at(mp, T) >= target && qmin_at(mp, look) >= target) return T;
    T = grow(T);
  }
  raise(errc::non_convergent, "turning_domain: potential never exceeded the target");
}

struct SchemeGrid {
  std::int64_t n = 0;
  double h = 0.0;
};

SchemeGrid make_grid(double T, double h_target) {
  SchemeGrid g;
  g.n = std::max<std::int64_t>(8, std::int64_t(std::ceil(T / h_target)) - 1);
  g.h = T / double(g.n + 1);
  return g;
}

// A potential that has blown past double range is simply a huge barrier.
inline double clamp_potential(double q) {
  return std::isfinite(q) ? q : 1e300;
}

// Dirichlet count of -d^2/dt^2 + q below `shift` on [0, T], streaming the
// standard scheme so large grids never materialize.
template <class Q>
std::int64_t dirichlet_count_stream(Q&& q, double T, double h_target, double shift) {
  const SchemeGrid g = make_grid(T, h_target);
  const double d0 = 2.0 / (g.h * g.h);
  const double offsq = 1.0 / (g.h * g.h * g.h * g.h);
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, offsq);
  const double h = g.h;
  return detail::sturm_count_stream(
      [&](std::int64_t i) { return d0 + clamp_potential(q(double(i + 1) * h)); }, g.n,
      offsq, shift, pivmin);
}

// One emptiness re-check past the truncation point: Dirichlet count on
// [T0, T1] must vanish, otherwise the truncation was too aggressive.
template <class Q>
std::int64_t probe_count_stream(Q&& q, double T0, double T1, double h_target,
                                double shift) {
  if (!(T1 > T0)) return 0;
  const double span = T1 - T0;
  const SchemeGrid g = make_grid(span, h_target);
  const double d0 = 2.0 / (g.h * g.h);
  const double offsq = 1.0 / (g.h * g.h * g.h * g.h);
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, offsq);
  const double h = g.h;
  return detail::sturm_count_stream(
      [&](std::int64_t i) { return d0 + clamp_potential(q(T0 + double(i + 1) * h)); },
      g.n, offsq, shift, pivmin);
}

// Counts for one signed mode at one refinement level, with the truncation
// extended until the beyond-T probe comes back empty.
std::int64_t mode_level_count(const ModeProblem& mp, double T, double h_target,
                              double lam2) {
  const double t_end = mp.domain_end();
  std::int64_t total = 0;
  for (int comp = 0; comp < 2; ++comp) {
    const bool plus = comp == 0;
    const auto q = [&](double t) { return plus ? mp.q_plus(t) : mp.q_minus(t); };
    double Tc = T;
    for (int ext = 0;; ++ext) {
      const std::int64_t c = dirichlet_count_stream(q, Tc, h_target, lam2);
      double T1;
      if (std::isinf(t_end)) {
        T1 = Tc + std::max(1.0, 0.25 * Tc);
      } else {
        T1 = Tc + 0.5 * (t_end - Tc);
      }
      const std::int64_t leak = probe_count_stream(q, Tc, T1, h_target, lam2);
      if (leak == 0) {
        total += c;
        break;
      }
      if (ext >= 8) {
        raise(errc::non_convergent, "count_states: truncation probe kept failing");
      }
      Tc = std::isinf(t_end) ? 1.5 * Tc : t_end - 0.5 * (t_end - Tc);
    }
  }
  return total;
}

double smallest_excluded(const BoundaryModel& model, double mu_max) {
  if (model.is_circle()) {
    const double r = model.radius();
    const double delta = model.spin() == Spin::nontrivial ? 0.5 : 0.0;
    const double k = std::floor(mu_max * r - delta) + 1.0;
    return (k + delta) / r;
  }
  const auto& gen = model.generator();
  for (std::size_t j = 0; j < 10'000'000; ++j) {
    const auto mode = gen(j);
    if (!mode) return std::numeric_limits<double>::infinity();
    if (std::fabs(mode->mu) > mu_max) return std::fabs(mode->mu);
  }
  return std::numeric_limits<double>::infinity();
}

void require_countable(const CuspModelSpec& spec, const BoundaryModel& model) {
  spec.validate();
  if (!(spec.p > 0.0)) {
    raise(errc::not_pure_point,
          "count requires p > 0: the spectrum is pure point only for p > 0");
  }
  if (!spectral_gap(model).invertible) {
    raise(errc::zero_mode_unsafe,
          "count requires an invertible boundary operator: a zero mode makes the "
          "mu = 0 channel boundary-condition sensitive");
  }
}

}  // namespace

double mode_cutoff(const CuspModelSpec& spec, const BoundaryModel& model,
                   double lambda, const Tolerances& tol) {
  require_countable(spec, model);
  tol.validate();
  if (!(lambda > 0.0)) raise(errc::invalid_config, "mode_cutoff: lambda must be > 0");
  const WarpProfile wp = warp_profile(spec);
  const double margin = tol.domain_safety_margin;
  const double lam2 = lambda * lambda;
  double mu_max = lambda * wp.sup_w() * (1.0 + margin);
  for (int attempt = 0; attempt < 16; ++attempt) {
    const double mu_ex = smallest_excluded(model, mu_max);
    if (std::isinf(mu_ex)) return mu_max;
    const ModeProblem mp(spec, mu_ex);
    const double target = lam2 * (1.0 + margin);
    // The probe interval must cover any dip of the partner potentials below
    // lambda^2; turning_domain already ends past it.
    double t_probe = std::max(turning_domain(mp, target), 1.0);
    if (!std::isinf(wp.t_end())) t_probe = std::min(t_probe, 0.9 * wp.t_end());
    const double h_target =
        std::min(2.0 * M_PI / lambda / tol.points_per_wavelength, t_probe / 64.0);
    const std::int64_t found =
        dirichlet_count_stream([&](double t) { return mp.q_plus(t); }, t_probe,
                               h_target, lam2) +
        dirichlet_count_stream([&](double t) { return mp.q_minus(t); }, t_probe,
                               h_target, lam2);
    if (found == 0) return mu_max;
    mu_max = mu_ex * (1.0 + margin);
  }
  raise(errc::non_convergent, "mode_cutoff: excluded-mode check kept failing");
}

CountResult count_states(const CountRequest& req) {
  const auto t_begin = std::chrono::steady_clock::now();
  require_countable(req.spec, req.model);
  req.tol.validate();
  if (!(req.lambda > 0.0)) raise(errc::invalid_config, "count_states: lambda must be > 0");

  const double lam2 = req.lambda * req.lambda;
  const double margin = req.tol.domain_safety_margin;
  const double mu_max = mode_cutoff(req.spec, req.model, req.lambda, req.tol);
  std::vector<Mode> modes = enumerate_modes(req.model, mu_max);
  // Deterministic processing order: increasing |mu|, negative sign first.
  std::stable_sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    const double aa = std::fabs(a.mu), ab = std::fabs(b.mu);
    if (aa != ab) return aa < ab;
    return a.mu < b.mu;
  });

  struct Task {
    ModeProblem mp;
    std::int64_t mult;
    double T0;
  };
  std::vector<Task> tasks;
  tasks.reserve(modes.size());
  const double target = lam2 * (1.0 + margin);
  for (const Mode& mode : modes) {
    ModeProblem mp(req.spec, mode.mu);
    double T0 = turning_domain(mp, target);
    T0 = std::max(T0, 8.0 * 2.0 * M_PI / req.lambda / req.tol.points_per_wavelength);
    if (mp.domain_end() < std::numeric_limits<double>::infinity()) {
      T0 = std::min(T0, mp.domain_end() * (1.0 - 1e-9));
    }
    tasks.push_back({std::move(mp), mode.mult, T0});
  }

  // Long domains first so the pool stays busy; results land in fixed slots.
  std::vector<std::size_t> schedule(tasks.size());
  std::iota(schedule.begin(), schedule.end(), std::size_t(0));
  std::stable_sort(schedule.begin(), schedule.end(), [&](std::size_t a, std::size_t b) {
    return tasks[a].T0 > tasks[b].T0;
  });

  const double h0 = 2.0 * M_PI / req.lambda / req.tol.points_per_wavelength;
  CountResult result;
  std::int64_t previous = -1;
  bool converged = tasks.empty();
  for (int level = 0; level <= req.tol.max_refinements; ++level) {
    const double h_level = std::ldexp(h0, -level);
    const double t_factor = std::pow(1.5, level);
    std::vector<std::int64_t> partial(tasks.size(), 0);
    parallel_for(tasks.size(), req.jobs, [&](std::size_t s) {
      const Task& task = tasks[schedule[s]];
      double T = task.T0 * t_factor;
      const double t_end = task.mp.domain_end();
      if (!std::isinf(t_end)) {
        T = t_end - (t_end - task.T0) * std::pow(0.5, level);
      }
      partial[schedule[s]] = task.mult * mode_level_count(task.mp, T, h_level, lam2);
    });
    std::int64_t total = 0;
    for (std::size_t i = 0; i < partial.size(); ++i) total += partial[i];
    result.grid_levels.emplace_back(h_level, total);
    if (previous >= 0 &&
        std::llabs(total - previous) <=
            std::int64_t(req.tol.convergence * double(std::max<std::int64_t>(1, total)))) {
      result.count = total;
      converged = true;
      break;
    }
    previous = total;
    result.count = total;
  }
  if (!converged) {
    raise(errc::non_convergent, "count_states: count did not stabilize under refinement");
  }
  result.modes_used = std::int64_t(tasks.size());
  result.semiclassical = semiclassical_count(req.spec, req.model, req.lambda);
  result.wallclock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  return result;
}

double semiclassical_count(const CuspModelSpec& spec, const BoundaryModel& model,
                           double lambda) {
  require_countable(spec, model);
  if (!(lambda > 0.0)) raise(errc::invalid_config, "semiclassical_count: lambda must be > 0");
  const WarpProfile wp = warp_profile(spec);
  const double lam2 = lambda * lambda;
  const auto modes = enumerate_modes(model, lambda * wp.sup_w() * 1.2);
  long double acc = 0.0L;
  for (const Mode& mode : modes) {
    const ModeProblem mp(spec, mode.mu);
    double T = turning_domain(mp, lam2 * 1.1);
    if (T <= 0.0) continue;  // classically forbidden at every radius
    if (!std::isinf(mp.domain_end())) T = std::min(T, mp.domain_end() * (1.0 - 1e-9));
    const double ip = phase_space_integral([&](double t) { return mp.q_plus(t); },
                                           lam2, 0.0, T, 1e-7);
    const double im = phase_space_integral([&](double t) { return mp.q_minus(t); },
                                           lam2, 0.0, T, 1e-7);
    acc += (long double)(mode.mult) * (long double)(ip + im);
  }
  return double(acc) / M_PI;
}

DriftReport bc_sensitivity(const CuspModelSpec& spec, double mu, double lambda_max,
                           const std::vector<double>& deltas,
                           Eigen::Index grid_points) {
  spec.validate();
  const WarpProfile wp = warp_profile(spec);
  if (!wp.bounded_domain()) {
    raise(errc::domain_exceeded, "bc_sensitivity: the horn-tip study requires p > 1");
  }
  if (deltas.empty()) raise(errc::invalid_config, "bc_sensitivity: empty delta list");
  if (!(lambda_max > 0.0)) raise(errc::invalid_config, "bc_sensitivity: lambda_max must be > 0");
  const double t_end = wp.t_end();
  const ModeProblem mp(spec, mu);
  const double lam2 = lambda_max * lambda_max;

  DriftReport report;
  report.deltas = deltas;
  for (double delta : deltas) {
    if (!(delta > 0.0) || !(delta < t_end)) {
      raise(errc::invalid_config, "bc_sensitivity: delta outside (0, t_max)");
    }
    const double L = t_end - delta;
    const auto Tp = discretize([&](double t) { return mp.q_plus(t); }, 0.0, L, grid_points);
    const auto Tm = discretize([&](double t) { return mp.q_minus(t); }, 0.0, L, grid_points);
    auto eig = eigenvalues_below(Tp, lam2);
    auto em = eigenvalues_below(Tm, lam2);
    eig.insert(eig.end(), em.begin(), em.end());
    std::sort(eig.begin(), eig.end());
    report.eigenvalues.push_back(std::move(eig));
  }

  std::size_t common = std::numeric_limits<std::size_t>::max();
  for (const auto& e : report.eigenvalues) common = std::min(common, e.size());
  double drift = 0.0;
  for (std::size_t j = 0; j < common; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& e : report.eigenvalues) {
      lo = std::min(lo, e[j]);
      hi = std::max(hi, e[j]);
    }
    drift = std::max(drift, hi - lo);
  }
  report.max_drift = drift;
  return report;
}

std::vector<std::pair<double, std::int64_t>> essential_spectrum_scan(
    const CuspModelSpec& spec, const BoundaryModel& model, double window_a,
    double window_b, const std::vector<double>& t_list,
    double points_per_wavelength) {
  spec.validate();
  if (!(spec.p >= 0.0) || !(spec.p < 1.0)) {
    raise(errc::invalid_config, "essential_spectrum_scan: defined for p in [0, 1)");
  }
  if (!(window_b > window_a) || !(window_a >= 0.0)) {
    raise(errc::invalid_config, "essential_spectrum_scan: need 0 <= a < b");
  }
  if (t_list.empty()) raise(errc::invalid_config, "essential_spectrum_scan: empty T list");
  for (double T : t_list) {
    if (!(T > 0.0)) raise(errc::invalid_config, "essential_spectrum_scan: T must be > 0");
  }

  const auto modes = enumerate_modes(model, window_b);
  const double a2 = window_a * window_a;
  const double b2 = window_b * window_b;
  // One grid step shared across every T so counts are comparable.
  const double h_target = 2.0 * M_PI / std::max(window_b, 1e-6) / points_per_wavelength;
  const double t_min = *std::min_element(t_list.begin(), t_list.end());
  const std::int64_t m0 = std::max<std::int64_t>(9, std::int64_t(std::ceil(t_min / h_target)));
  const double h = t_min / double(m0);

  std::vector<std::pair<double, std::int64_t>> rows;
  rows.reserve(t_list.size());
  for (double T : t_list) {
    const std::int64_t n = std::max<std::int64_t>(8, std::llround(T / h) - 1);
    std::int64_t count = 0;
    for (const Mode& mode : modes) {
      const ModeProblem mp(spec, mode.mu);
      for (int comp = 0; comp < 2; ++comp) {
        const bool plus = comp == 0;
        const auto q = [&](double t) { return plus ? mp.q_plus(t) : mp.q_minus(t); };
        const double d0 = 2.0 / (h * h);
        const double offsq = 1.0 / (h * h * h * h);
        const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, offsq);
        const auto diag_at = [&](std::int64_t i) {
          return d0 + clamp_potential(q(double(i + 1) * h));
        };
        count += mode.mult * (detail::sturm_count_stream(diag_at, n, offsq, b2, pivmin) -
                              detail::sturm_count_stream(diag_at, n, offsq, a2, pivmin));
      }
    }
    rows.emplace_back(T, count);
  }
  return rows;
}

}  // namespace cusplab
