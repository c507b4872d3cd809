#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cusplab/counting.hpp"
#include "cusplab/quadrature.hpp"
#include "cusplab/weyl.hpp"

using namespace cusplab;

namespace {

const BoundaryModel kCircle = BoundaryModel::circle(1.0, Spin::nontrivial);

// Exact phase-space integral of one hyperbolic mode (p = 1, x0 = 1) without
// the V' term: int_0^inf sqrt(max(0, lambda^2 - mu^2 e^{2t})) dt.
double hyperbolic_mode_integral(double mu, double lambda) {
  const double v = std::fabs(mu) / lambda;
  if (v >= 1.0) return 0.0;
  const double c = std::sqrt(1.0 - v * v);
  return lambda * (std::log((1.0 + c) / v) - c);
}

}  // namespace

TEST_CASE("mode cutoff follows the warp supremum") {
  CHECK(mode_cutoff(CuspModelSpec{2, 0.25, 1.0}, kCircle, 10.0) ==
        doctest::Approx(12.0).epsilon(1e-12));
  CHECK(mode_cutoff(CuspModelSpec{2, 1.0, 2.0}, kCircle, 10.0) ==
        doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("excluded modes contribute nothing") {
  // first excluded mode for p = 1/4, lambda = 10 is mu = 12.5; its lowest
  // level sits far above lambda^2, so the cutoff stays put
  const double cut = mode_cutoff(CuspModelSpec{2, 0.25, 1.0}, kCircle, 10.0);
  CHECK(cut == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("count rejects bad hypotheses") {
  CountRequest req{CuspModelSpec{2, 0.0, 1.0}, kCircle, 5.0, {}, 1};
  CHECK_THROWS_AS(count_states(req), Error);
  try {
    count_states(req);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_pure_point);
  }

  CountRequest zero{CuspModelSpec{2, 1.5, 1.0},
                    BoundaryModel::circle(1.0, Spin::trivial), 5.0, {}, 1};
  CHECK_THROWS_AS(count_states(zero), Error);
  try {
    count_states(zero);
  } catch (const Error& e) {
    CHECK(e.code() == errc::zero_mode_unsafe);
  }
}

TEST_CASE("lambda below the spectral gap counts zero") {
  CountRequest req{CuspModelSpec{2, 1.0, 1.0}, kCircle, 0.01, {}, 1};
  const auto res = count_states(req);
  CHECK(res.count == 0);
}

TEST_CASE("counts are deterministic and monotone in lambda") {
  CountRequest req{CuspModelSpec{2, 1.0, 1.0}, kCircle, 8.0, {}, 1};
  const auto a = count_states(req);
  const auto b = count_states(req);
  CHECK(a.count == b.count);
  REQUIRE(a.grid_levels.size() == b.grid_levels.size());
  for (std::size_t i = 0; i < a.grid_levels.size(); ++i) {
    CHECK(a.grid_levels[i].second == b.grid_levels[i].second);
  }

  req.jobs = 3;
  const auto c = count_states(req);
  CHECK(c.count == a.count);

  CountRequest req12{CuspModelSpec{2, 1.0, 1.0}, kCircle, 12.0, {}, 2};
  CHECK(count_states(req12).count >= a.count);
}

TEST_CASE("signed modes contribute symmetrically") {
  const CuspModelSpec spec{2, 0.5, 1.0};
  const auto plus = BoundaryModel::synthetic(
      [](std::size_t j) -> std::optional<Mode> {
        if (j > 0) return std::nullopt;
        return Mode{1.5, 1};
      },
      1);
  const auto minus = BoundaryModel::synthetic(
      [](std::size_t j) -> std::optional<Mode> {
        if (j > 0) return std::nullopt;
        return Mode{-1.5, 1};
      },
      1);
  CountRequest a{spec, plus, 9.0, {}, 1};
  CountRequest b{spec, minus, 9.0, {}, 1};
  CHECK(count_states(a).count == count_states(b).count);
  CHECK(count_states(a).count > 0);
}

TEST_CASE("count tracks the semiclassical oracle at moderate lambda") {
  CountRequest req{CuspModelSpec{2, 1.0, 1.0}, kCircle, 12.0, {}, 2};
  const auto res = count_states(req);
  CHECK(res.semiclassical > 0.0);
  CHECK(std::fabs(double(res.count) - res.semiclassical) / res.semiclassical < 0.1);
}

TEST_CASE("semiclassical oracle against the closed-form hyperbolic modes") {
  const CuspModelSpec spec{2, 1.0, 1.0};
  for (double lambda : {6.0, 11.0}) {
    double expected = 0.0;
    for (const auto& mode : enumerate_modes(kCircle, lambda)) {
      expected += 2.0 / M_PI * hyperbolic_mode_integral(mode.mu, lambda);
    }
    const double got = semiclassical_count(spec, kCircle, lambda);
    // the V' term shifts each mode integral by O(1/lambda) relative
    CHECK(got == doctest::Approx(expected).epsilon(0.02));
  }
}

TEST_CASE("semiclassical count vanishes below every mode") {
  const auto single = BoundaryModel::synthetic(
      [](std::size_t j) -> std::optional<Mode> {
        if (j > 0) return std::nullopt;
        return Mode{3.0, 1};
      },
      1);
  CHECK(semiclassical_count(CuspModelSpec{2, 0.0001, 1.0}, single, 2.0) ==
        doctest::Approx(0.0));
}

TEST_CASE("phase-space integral scaling under mu -> 2 mu") {
  // For p = 1 each mode integral is lambda * F(|mu|/lambda), so doubling mu
  // at doubled lambda doubles the integral.
  const CuspModelSpec spec{2, 1.0, 1.0};
  const ModeProblem a(spec, 0.5);
  const ModeProblem b(spec, 1.0);
  const double ia = phase_space_integral([&](double t) { return a.mu() * a.mu() *
                                                                std::exp(2.0 * t); },
                                         36.0, 0.0, 12.0);
  const double ib = phase_space_integral([&](double t) { return b.mu() * b.mu() *
                                                                std::exp(2.0 * t); },
                                         144.0, 0.0, 12.0);
  CHECK(ib == doctest::Approx(2.0 * ia).epsilon(1e-5));
}

TEST_CASE("essential spectrum scan: cylindrical counts grow, confining counts freeze") {
  const std::vector<double> t_list{50.0, 100.0, 200.0};
  const auto grow = essential_spectrum_scan(CuspModelSpec{2, 0.0, 1.0}, kCircle, 0.6,
                                            0.8, t_list);
  REQUIRE(grow.size() == 3);
  CHECK(grow[0].second > 0);
  const double r1 = double(grow[1].second) / double(grow[0].second);
  const double r2 = double(grow[2].second) / double(grow[1].second);
  CHECK(r1 > 1.6);
  CHECK(r1 < 2.4);
  CHECK(r2 > 1.6);
  CHECK(r2 < 2.4);

  const auto frozen = essential_spectrum_scan(CuspModelSpec{2, 0.2, 1.0}, kCircle, 0.6,
                                              0.8, t_list);
  CHECK(frozen[1].second == frozen[2].second);

  const auto below = essential_spectrum_scan(CuspModelSpec{2, 0.0, 1.0}, kCircle, 0.1,
                                             0.3, t_list);
  for (const auto& [T, count] : below) CHECK(count == 0);
}

TEST_CASE("horn truncation: invertible modes are insensitive, the zero mode is not") {
  const CuspModelSpec spec{2, 1.5, 1.0};
  const std::vector<double> deltas{1e-2, 1e-3, 1e-4};
  const auto stable = bc_sensitivity(spec, 0.5, 20.0, deltas);
  CHECK(stable.max_drift < 1e-2);
  REQUIRE(!stable.eigenvalues.front().empty());

  const auto control = bc_sensitivity(spec, 0.0, 20.0, deltas);
  CHECK(control.max_drift > 0.1);

  const auto single = bc_sensitivity(spec, 0.5, 20.0, {1e-3});
  CHECK(single.max_drift == 0.0);
}

TEST_CASE("bc sensitivity requires a horn") {
  CHECK_THROWS_AS(bc_sensitivity(CuspModelSpec{2, 0.5, 1.0}, 0.5, 10.0, {1e-2}), Error);
}
