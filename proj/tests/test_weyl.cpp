#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cusplab/boundary.hpp"
#include "cusplab/weyl.hpp"

using namespace cusplab;

namespace {
const BoundaryModel kCircle = BoundaryModel::circle(1.0, Spin::nontrivial);
}

TEST_CASE("regime selection is a pure function of n and p") {
  CHECK(predict(CuspModelSpec{2, 0.51, 1.0}, kCircle).regime == Regime::volume_dominated);
  CHECK(predict(CuspModelSpec{2, 0.5, 1.0}, kCircle).regime == Regime::critical);
  CHECK(predict(CuspModelSpec{2, 0.49, 1.0}, kCircle).regime == Regime::cusp_dominated);
  CHECK(predict(CuspModelSpec{3, 1.0 / 3.0, 1.0}, kCircle).regime == Regime::critical);
  CHECK_THROWS_AS(predict(CuspModelSpec{2, -1.0, 1.0}, kCircle), Error);
}

TEST_CASE("volume regime constant from the closed-form ingredients") {
  // Vol(X,g_1) = 2 pi, Vol(S^1) = 2 pi, rank 2: C = (2pi)(2pi)(2) / (2 (2pi)^2) = 1
  const auto pred = predict(CuspModelSpec{2, 1.0, 1.0}, kCircle);
  CHECK(pred.exponent == doctest::Approx(2.0));
  CHECK(pred.log_power == 0);
  CHECK(pred.ingredients.vol_x == doctest::Approx(2.0 * M_PI).epsilon(1e-13));
  const double by_hand =
      (2.0 * M_PI) * (2.0 * M_PI) * 2.0 / (2.0 * std::pow(2.0 * M_PI, 2.0));
  CHECK(by_hand == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pred.constant == doctest::Approx(by_hand).epsilon(1e-12));

  // doubling x0 doubles Vol(X, g_1) and hence the constant
  const auto wide = predict(CuspModelSpec{2, 1.0, 2.0}, kCircle);
  CHECK(wide.constant == doctest::Approx(2.0 * pred.constant).epsilon(1e-12));
}

TEST_CASE("critical regime constant") {
  const auto pred = predict(CuspModelSpec{2, 0.5, 1.0}, kCircle);
  CHECK(pred.exponent == doctest::Approx(2.0));
  CHECK(pred.log_power == 1);
  CHECK(pred.constant == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("cusp regime constants") {
  // p = 1/4: Gamma(3/2) zeta(D,3) * 2 / (2 sqrt(pi) Gamma(2)) = zeta(D,3)/2
  const auto quarter = predict(CuspModelSpec{2, 0.25, 1.0}, kCircle);
  CHECK(quarter.exponent == doctest::Approx(4.0));
  CHECK(quarter.log_power == 0);
  CHECK(quarter.constant == doctest::Approx(8.4143983221).epsilon(1e-8));
  CHECK(quarter.constant ==
        doctest::Approx(0.5 * quarter.ingredients.zeta_value).epsilon(1e-12));

  // p = 1/3: Gamma(1) zeta(D,2) * 2 / (2 sqrt(pi) Gamma(3/2)) = 6 zeta_R(2) / pi... = 2 pi
  const auto third = predict(CuspModelSpec{2, 1.0 / 3.0, 1.0}, kCircle);
  CHECK(third.exponent == doctest::Approx(3.0));
  CHECK(third.constant == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
}

TEST_CASE("cusp constant transports under radius scaling by r^{1/p - 1}") {
  const double p = 0.25;
  const auto base = predict(CuspModelSpec{2, p, 1.0}, kCircle);
  const auto scaled =
      predict(CuspModelSpec{2, p, 1.0}, BoundaryModel::circle(2.0, Spin::nontrivial));
  CHECK(scaled.constant ==
        doctest::Approx(std::pow(2.0, 1.0 / p - 1.0) * base.constant).epsilon(1e-9));
}

TEST_CASE("cusp regime requires an invertible boundary") {
  CHECK_THROWS_AS(
      predict(CuspModelSpec{2, 0.25, 1.0}, BoundaryModel::circle(1.0, Spin::trivial)),
      Error);
}

TEST_CASE("infinite volume guard") {
  CHECK_THROWS_AS(total_volume(CuspModelSpec{2, 0.5, 1.0}, kCircle), Error);
  CHECK_THROWS_AS(total_volume(CuspModelSpec{2, 0.25, 1.0}, kCircle), Error);
  CHECK(total_volume(CuspModelSpec{2, 1.0, 1.0}, kCircle) ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-13));
}

TEST_CASE("delange coefficients") {
  CHECK(delange_coefficient(4.0, 2.0, 1) == doctest::Approx(2.0));
  CHECK(delange_coefficient(6.0, 3.0, 2) == doctest::Approx(2.0));
  CHECK(delange_coefficient(12.0, 2.0, 3) == doctest::Approx(3.0));
  CHECK_THROWS_AS(delange_coefficient(1.0, 0.0, 1), Error);
  CHECK_THROWS_AS(delange_coefficient(1.0, 1.0, 0), Error);
}

TEST_CASE("double-pole composition recovers the critical constant") {
  const CuspModelSpec spec{2, 0.5, 1.0};
  const double pole = critical_pole_coefficient(spec, kCircle);
  const double composed = delange_coefficient(pole, double(spec.n), 2);
  CHECK(composed == doctest::Approx(predict(spec, kCircle).constant).epsilon(1e-12));
}

TEST_CASE("fits on exact power-law data") {
  std::vector<CountSample> samples;
  for (double lambda : {8.0, 11.0, 16.0, 23.0, 32.0, 45.0}) {
    samples.emplace_back(lambda, 2.0 * lambda * lambda);
  }
  const auto fit = fit_asymptotics(samples, KChoice::k0);
  CHECK(fit.a_fit == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.c_fit == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.samples == 6);

  const auto frozen = fit_constant(samples, 2.0, 0);
  CHECK(frozen.c_fit == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("free k selects the log factor when present") {
  std::vector<CountSample> log_samples, plain_samples;
  for (double lambda : {8.0, 11.0, 16.0, 23.0, 32.0, 45.0}) {
    log_samples.emplace_back(lambda, 2.0 * lambda * lambda * std::log(lambda));
    plain_samples.emplace_back(lambda, 2.0 * lambda * lambda);
  }
  CHECK(fit_asymptotics(log_samples, KChoice::free_k).k_fit == 1);
  CHECK(fit_asymptotics(plain_samples, KChoice::free_k).k_fit == 0);
  const auto fit = fit_asymptotics(log_samples, KChoice::k1);
  CHECK(fit.a_fit == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.c_fit == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("critical slope regression is exact on synthetic critical data") {
  std::vector<CountSample> samples;
  for (double lambda : {12.0, 17.0, 24.0, 34.0, 48.0, 68.0, 96.0}) {
    samples.emplace_back(lambda, lambda * lambda * (2.0 * std::log(lambda) + 3.0));
  }
  const auto cf = fit_critical_slope(samples, 2);
  CHECK(cf.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cf.intercept == doctest::Approx(3.0).epsilon(1e-11));
  CHECK(cf.residual < 1e-10);
}

TEST_CASE("one percent multiplicative noise moves the constant by under 3 percent") {
  std::mt19937 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto grid = geometric_grid(8.0, 64.0, 10);
  std::vector<CountSample> samples;
  for (double lambda : grid) {
    samples.emplace_back(lambda, 2.0 * lambda * lambda * (1.0 + 0.01 * gauss(rng)));
  }
  const auto fit = fit_asymptotics(samples, KChoice::k0);
  CHECK(std::fabs(fit.c_fit - 2.0) / 2.0 < 0.03);
  CHECK(std::fabs(fit.a_fit - 2.0) < 0.03);
}

TEST_CASE("fit input validation") {
  std::vector<CountSample> few = {{8.0, 10.0}, {9.0, 11.0}, {40.0, 90.0},
                                  {41.0, 95.0}, {42.0, 99.0}};
  CHECK_THROWS_AS(fit_asymptotics(few, KChoice::k0), Error);  // five samples

  std::vector<CountSample> narrow;
  for (double lambda : {8.0, 9.0, 10.0, 11.0, 12.0, 13.0}) {
    narrow.emplace_back(lambda, lambda * lambda);
  }
  CHECK_THROWS_AS(fit_asymptotics(narrow, KChoice::k0), Error);  // span < 4

  std::vector<CountSample> rotten;
  for (double lambda : {8.0, 11.0, 16.0, 23.0, 32.0, 45.0}) {
    rotten.emplace_back(lambda, lambda == 16.0 ? 0.0 : lambda * lambda);
  }
  CHECK_THROWS_AS(fit_asymptotics(rotten, KChoice::k0), Error);  // zero count
}

TEST_CASE("geometric grids hit the endpoints") {
  const auto grid = geometric_grid(8.0, 32.0, 8);
  REQUIRE(grid.size() == 8);
  CHECK(grid.front() == doctest::Approx(8.0));
  CHECK(grid.back() == doctest::Approx(32.0));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i] / grid[i - 1] == doctest::Approx(std::pow(4.0, 1.0 / 7.0)).epsilon(1e-9));
  }
}
