#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cusplab/boundary.hpp"

using namespace cusplab;

namespace {

// Riemann zeta at s = 3 by direct summation with a midpoint tail estimate;
// the remainder of the Euler-Maclaurin correction is O(K^-5).
long double riemann_zeta3() {
  const long long K = 20000;
  long double acc = 0.0L;
  for (long long k = K; k >= 1; --k) acc += 1.0L / (long double)(k) / k / k;
  const long double tail = 0.5L / ((K + 0.5L) * (K + 0.5L));
  return acc + tail;
}

BoundaryModel integers_model() {
  // mu = +-1, +-2, ... each with multiplicity 1
  return BoundaryModel::synthetic(
      [](std::size_t j) -> std::optional<Mode> {
        const double mu = double(j / 2 + 1);
        return Mode{j % 2 == 0 ? mu : -mu, 1};
      },
      1, std::nullopt, 4.0);
}

}  // namespace

TEST_CASE("circle mode enumeration") {
  const auto nontriv = BoundaryModel::circle(1.0, Spin::nontrivial);
  auto modes = enumerate_modes(nontriv, 2.6);
  REQUIRE(modes.size() == 6);
  const double expected[] = {-2.5, -1.5, -0.5, 0.5, 1.5, 2.5};
  for (int i = 0; i < 6; ++i) {
    CHECK(modes[i].mu == doctest::Approx(expected[i]).epsilon(1e-15));
    CHECK(modes[i].mult == 1);
  }

  const auto triv = BoundaryModel::circle(1.0, Spin::trivial);
  modes = enumerate_modes(triv, 1.1);
  REQUIRE(modes.size() == 3);
  CHECK(modes[0].mu == doctest::Approx(-1.0));
  CHECK(modes[1].mu == doctest::Approx(0.0));
  CHECK(modes[2].mu == doctest::Approx(1.0));

  const auto wide = BoundaryModel::circle(2.0, Spin::nontrivial);
  modes = enumerate_modes(wide, 0.3);
  REQUIRE(modes.size() == 2);
  CHECK(modes[0].mu == doctest::Approx(-0.25));
  CHECK(modes[1].mu == doctest::Approx(0.25));
}

TEST_CASE("circle spectra are symmetric under negation") {
  for (double r : {0.5, 1.0, 2.0, 3.7}) {
    for (Spin spin : {Spin::trivial, Spin::nontrivial}) {
      const auto model = BoundaryModel::circle(r, spin);
      for (double mu_max : {0.9, 2.4, 7.13}) {
        const auto modes = enumerate_modes(model, mu_max);
        auto neg = modes;
        for (auto& mode : neg) mode.mu = -mode.mu;
        std::sort(neg.begin(), neg.end(),
                  [](const Mode& a, const Mode& b) { return a.mu < b.mu; });
        REQUIRE(neg.size() == modes.size());
        for (std::size_t i = 0; i < modes.size(); ++i) {
          CHECK(neg[i].mu == doctest::Approx(modes[i].mu).epsilon(1e-14));
        }
        CHECK(std::is_sorted(modes.begin(), modes.end(),
                             [](const Mode& a, const Mode& b) { return a.mu < b.mu; }));
      }
    }
  }
}

TEST_CASE("spectral gap") {
  const auto g1 = spectral_gap(BoundaryModel::circle(1.0, Spin::nontrivial));
  CHECK(g1.invertible);
  CHECK(g1.gap == doctest::Approx(0.5));

  const auto g2 = spectral_gap(BoundaryModel::circle(1.0, Spin::trivial));
  CHECK_FALSE(g2.invertible);
  CHECK(g2.gap == 0.0);

  const auto g3 = spectral_gap(integers_model());
  CHECK(g3.invertible);
  CHECK(g3.gap == doctest::Approx(1.0));
}

TEST_CASE("boundary zeta against the closed form 14 zeta_R(3)") {
  const auto model = BoundaryModel::circle(1.0, Spin::nontrivial);
  // sum over k in Z of |k+1/2|^-3 = 2 (2^3 - 1) zeta_R(3)
  const double expected = double(14.0L * riemann_zeta3());
  const double got = zeta_boundary(model, 3.0, 1e-10);
  CHECK(std::fabs(got - expected) <= 1e-10);
  CHECK(got == doctest::Approx(16.8287966442).epsilon(1e-9));
}

TEST_CASE("zeta scaling in the radius") {
  const double base = zeta_boundary(BoundaryModel::circle(1.0, Spin::nontrivial), 3.0, 1e-10);
  for (double r : {0.5, 2.0, 3.0}) {
    const double scaled =
        zeta_boundary(BoundaryModel::circle(r, Spin::nontrivial), 3.0, 1e-10);
    CHECK(std::fabs(scaled - r * r * r * base) <= 2e-10);
  }
}

TEST_CASE("zeta tail soundness: longer partial sums stay within eps") {
  const double eps = 1e-8;
  const double ret = zeta_boundary(BoundaryModel::circle(1.0, Spin::nontrivial), 3.0, eps);
  // brute-force partial sums far beyond any internal truncation
  long double acc = 0.0L;
  for (long long k = 3'000'000; k >= 0; --k) {
    const long double mu = k + 0.5L;
    acc += 2.0L / (mu * mu * mu);
  }
  CHECK(std::fabs(double(acc) - ret) <= eps);
}

TEST_CASE("partial sums are nondecreasing in the truncation") {
  const auto model = BoundaryModel::circle(1.0, Spin::nontrivial);
  double prev = 0.0;
  for (double window : {1.0, 3.0, 9.0, 27.0, 81.0}) {
    double sum = 0.0;
    for (const auto& mode : enumerate_modes(model, window)) {
      sum += double(mode.mult) * std::pow(std::fabs(mode.mu), -3.0);
    }
    CHECK(sum >= prev);
    prev = sum;
  }
  CHECK(prev < zeta_boundary(model, 3.0, 1e-10) + 1e-10);
}

TEST_CASE("zeta rejects zero modes and the divergent region") {
  CHECK_THROWS_AS(zeta_boundary(BoundaryModel::circle(1.0, Spin::trivial), 3.0, 1e-8), Error);
  CHECK_THROWS_AS(zeta_boundary(BoundaryModel::circle(1.0, Spin::nontrivial), 1.0, 1e-8),
                  Error);
  CHECK_THROWS_AS(zeta_boundary(BoundaryModel::circle(1.0, Spin::nontrivial), 0.5, 1e-8),
                  Error);
}

TEST_CASE("synthetic zeta with a declared majorant matches the analytic sum") {
  const double got = zeta_boundary(integers_model(), 3.0, 1e-7);
  CHECK(got == doctest::Approx(double(2.0L * riemann_zeta3())).epsilon(1e-7));
}

TEST_CASE("synthetic generators must be ordered by |mu|") {
  const auto bad = BoundaryModel::synthetic(
      [](std::size_t j) -> std::optional<Mode> {
        if (j > 3) return std::nullopt;
        const double values[] = {1.0, 3.0, 2.0, 4.0};
        return Mode{values[j], 1};
      },
      1);
  CHECK_THROWS_AS(enumerate_modes(bad, 10.0), Error);
}

TEST_CASE("finite synthetic spectra sum exactly") {
  const auto model = BoundaryModel::synthetic(
      [](std::size_t j) -> std::optional<Mode> {
        if (j >= 2) return std::nullopt;
        return Mode{j == 0 ? 2.0 : -2.0, 3};
      },
      1);
  CHECK(zeta_boundary(model, 2.0, 1e-12) == doctest::Approx(6.0 / 4.0).epsilon(1e-12));
}
