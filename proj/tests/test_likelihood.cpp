// SPDX-License-Identifier: Apache-2.0

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "wxgen/error.hpp"
#include "wxgen/likelihood.hpp"

using namespace wxgen;

namespace {

// Kolmogorov-Smirnov statistic of `draws` against `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> draws, Cdf cdf) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = cdf(draws[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

// Asymptotic critical value at significance alpha.
double ks_critical(double alpha, std::size_t n) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace

TEST_CASE("gamma_nll closed forms") {
  CHECK(gamma_nll(1.0, {1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gamma_nll(2.0, {2.0, 1.0}) == doctest::Approx(2.0 - std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_nll(0.0, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(gamma_nll(1.0, {0.0, 1.0}), DomainError);
}

TEST_CASE("exp(-gamma_nll) integrates to one") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.5, 5.0);
  boost::math::quadrature::exp_sinh<double> integrator;
  for (int i = 0; i < 10; ++i) {
    const GammaParams p{u(rng), u(rng)};
    const double mass = integrator.integrate([&](double x) { return x > 0.0 ? std::exp(-gamma_nll(x, p)) : 0.0; });
    CHECK(std::abs(mass - 1.0) <= 1e-6);
  }
}

TEST_CASE("normal_nll closed forms") {
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  CHECK(normal_nll(0.0, {0.0, 1.0}) == doctest::Approx(half_log_2pi).epsilon(1e-12));
  CHECK(normal_nll(1.0, {0.0, 1.0}) == doctest::Approx(half_log_2pi + 0.5).epsilon(1e-12));
  for (double sigma : {0.3, 1.0, 4.0}) {
    const NormalParams p{1.5, sigma};
    CHECK(normal_nll(1.5, p) < normal_nll(1.5 + 1e-3, p));
    CHECK(normal_nll(1.5, p) < normal_nll(1.5 - 1e-3, p));
  }
  CHECK_THROWS_AS(normal_nll(0.0, {0.0, 0.0}), DomainError);
}

TEST_CASE("day_nll is the sum of its parts") {
  const DayDistribution d{{1.0, 1.0}, {0.0, 1.0}, {2.0, 1.0}, {1.0, 1.0}};
  const DayVector x{1.0, 1.0, 2.0, 1.0};
  const double expected = 1.0 + (0.5 * std::log(2.0 * std::numbers::pi) + 0.5) + (2.0 - std::log(2.0)) + 1.0;
  CHECK(day_nll(x, d) == doctest::Approx(expected).epsilon(1e-12));

  DayVector x2 = x;
  x2[3] = 2.0;
  CHECK(day_nll(x2, d) - day_nll(x, d) == doctest::Approx(gamma_nll(2.0, d.rain) - gamma_nll(1.0, d.rain)));
  DayVector bad = x;
  bad[0] = -1.0;
  CHECK_THROWS_WITH_AS(day_nll(bad, d), doctest::Contains("radn"), DomainError);
}

TEST_CASE("day_nll gradient matches central differences") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> pos(0.5, 5.0);
  std::uniform_real_distribution<double> any(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const DayVector x{pos(rng), any(rng), pos(rng), pos(rng)};
    const DayDistribution d{{pos(rng), pos(rng)}, {any(rng), pos(rng)}, {pos(rng), pos(rng)}, {pos(rng), pos(rng)}};
    const DayNllResult r = day_nll_with_gradient(x, d);
    const HeadVector base = to_head_vector(d);
    for (std::size_t j = 0; j < kHeadParams; ++j) {
      const double h = 1e-6;
      HeadVector plus = base;
      HeadVector minus = base;
      plus[j] += h;
      minus[j] -= h;
      auto from = [](const HeadVector& v) {
        return DayDistribution{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
      };
      const double fd = (day_nll(x, from(plus)) - day_nll(x, from(minus))) / (2.0 * h);
      const double denom = std::max({std::abs(fd), std::abs(r.gradient[j]), 1e-3});
      CHECK(std::abs(fd - r.gradient[j]) / denom <= 1e-4);
    }
  }
}

TEST_CASE("head_activation") {
  const DayDistribution z = head_activation(HeadVector{}, 1e-3);
  CHECK(z.mint.mu == 0.0);
  for (double v : {z.radn.alpha, z.radn.beta, z.mint.sigma, z.diff.alpha, z.diff.beta, z.rain.alpha, z.rain.beta}) {
    CHECK(v == doctest::Approx(std::log(2.0) + 1e-3).epsilon(1e-12));
  }
  HeadVector low{};
  low[0] = -40.0;
  CHECK(head_activation(low, 1e-3).radn.alpha == doctest::Approx(1e-3).epsilon(1e-9));
  HeadVector high{};
  high[3] = 40.0;
  CHECK(head_activation(high, 1e-3).mint.sigma == doctest::Approx(40.001).epsilon(1e-12));
  for (double extreme : {-1e6, 1e6}) {
    HeadVector e;
    e.fill(extreme);
    const DayDistribution d = head_activation(e, 1e-3);
    for (double v : {d.radn.alpha, d.radn.beta, d.mint.sigma, d.diff.alpha, d.diff.beta, d.rain.alpha, d.rain.beta}) {
      CHECK(v > 0.0);
      CHECK(std::isfinite(v));
    }
  }
}

TEST_CASE("sampler moments and determinism") {
  Rng rng(42);
  const int n = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_gamma({4.0, 2.0}, rng);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean - 2.0) <= 0.02 * 2.0);
  CHECK(std::abs(var - 1.0) <= 0.05 * 1.0);

  double nsum = 0.0;
  for (int i = 0; i < n; ++i) nsum += sample_normal({3.0, 0.5}, rng);
  CHECK(std::abs(nsum / n - 3.0) <= 0.01 * 3.0);

  Rng a(5);
  Rng b(5);
  for (int i = 0; i < 100; ++i) CHECK(sample_gamma({0.3, 1.5}, a) == sample_gamma({0.3, 1.5}, b));
}

TEST_CASE("samplers pass Kolmogorov-Smirnov tests") {
  std::mt19937_64 pick(77);
  std::uniform_real_distribution<double> shape(0.2, 8.0);
  std::uniform_real_distribution<double> rate(0.2, 5.0);
  const std::size_t n = 10000;
  const double critical = ks_critical(1e-3, n);
  for (int setting = 0; setting < 10; ++setting) {
    const GammaParams g{shape(pick), rate(pick)};
    Rng rng = make_stream(100, static_cast<std::uint64_t>(setting));
    std::vector<double> draws(n);
    for (double& x : draws) x = sample_gamma(g, rng);
    const double d = ks_statistic(draws, [&](double x) { return boost::math::gamma_p(g.alpha, g.beta * x); });
    CHECK_MESSAGE(d < critical, "gamma alpha=" << g.alpha << " beta=" << g.beta << " D=" << d);

    const NormalParams p{shape(pick) - 4.0, rate(pick)};
    std::vector<double> nd(n);
    for (double& x : nd) x = sample_normal(p, rng);
    const double dn = ks_statistic(nd, [&](double x) { return 0.5 * std::erfc(-(x - p.mu) / (p.sigma * std::sqrt(2.0))); });
    CHECK(dn < critical);
  }
}

TEST_CASE("rng streams are independent of each other") {
  Rng a = make_stream(1, 0);
  Rng b = make_stream(1, 1);
  Rng a2 = make_stream(1, 0);
  CHECK(a() != b());
  a = make_stream(1, 0);
  for (int i = 0; i < 10; ++i) CHECK(a() == a2());
}
