// SPDX-License-Identifier: Apache-2.0

#include "wxgen/likelihood.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wxgen/autodiff/ops.hpp"
#include "wxgen/error.hpp"

namespace wxgen {

namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // 0.5 * log(2 pi)

void check_gamma(double x, const GammaParams& p) {
  if (!(x > 0.0)) throw DomainError("gamma NLL needs x > 0, got " + std::to_string(x));
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) throw DomainError("gamma parameters must be positive");
}

void check_normal(const NormalParams& p) {
  if (!(p.sigma > 0.0)) throw DomainError("normal sigma must be positive, got " + std::to_string(p.sigma));
}

std::size_t idx(Variable v) { return static_cast<std::size_t>(v); }

// Overflow yields inf rather than an exception; the trainer reports
// non-finite losses itself.
using QuietPolicy = boost::math::policies::policy<boost::math::policies::overflow_error<
    boost::math::policies::ignore_error>>;

}  // namespace

double gamma_nll(double x, const GammaParams& p) {
  check_gamma(x, p);
  return -(p.alpha * std::log(p.beta) - boost::math::lgamma(p.alpha, QuietPolicy{}) + (p.alpha - 1.0) * std::log(x) - p.beta * x);
}

double normal_nll(double x, const NormalParams& p) {
  check_normal(p);
  const double z = (x - p.mu) / p.sigma;
  return kHalfLogTwoPi + std::log(p.sigma) + 0.5 * z * z;
}

std::array<double, 2> gamma_nll_gradient(double x, const GammaParams& p) {
  check_gamma(x, p);
  return {-std::log(p.beta) + boost::math::digamma(p.alpha, QuietPolicy{}) - std::log(x), -p.alpha / p.beta + x};
}

std::array<double, 2> normal_nll_gradient(double x, const NormalParams& p) {
  check_normal(p);
  const double r = x - p.mu;
  const double s2 = p.sigma * p.sigma;
  return {-r / s2, 1.0 / p.sigma - r * r / (s2 * p.sigma)};
}

namespace {

template <class F>
auto with_variable(const char* name, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw DomainError(std::string(name) + ": " + e.what());
  }
}

}  // namespace

double day_nll(const DayVector& x, const DayDistribution& d) {
  return with_variable("radn", [&] { return gamma_nll(x[idx(Variable::radn)], d.radn); }) +
         with_variable("mint", [&] { return normal_nll(x[idx(Variable::mint)], d.mint); }) +
         with_variable("diff", [&] { return gamma_nll(x[idx(Variable::diff)], d.diff); }) +
         with_variable("rain", [&] { return gamma_nll(x[idx(Variable::rain)], d.rain); });
}

DayNllResult day_nll_with_gradient(const DayVector& x, const DayDistribution& d) {
  DayNllResult r;
  r.value = day_nll(x, d);
  const auto g_radn = gamma_nll_gradient(x[idx(Variable::radn)], d.radn);
  const auto g_mint = normal_nll_gradient(x[idx(Variable::mint)], d.mint);
  const auto g_diff = gamma_nll_gradient(x[idx(Variable::diff)], d.diff);
  const auto g_rain = gamma_nll_gradient(x[idx(Variable::rain)], d.rain);
  r.gradient = {g_radn[0], g_radn[1], g_mint[0], g_mint[1], g_diff[0], g_diff[1], g_rain[0], g_rain[1]};
  return r;
}

DayDistribution head_activation(const HeadVector& raw, double eps) {
  auto pos = [eps](double z) { return ad::softplus(z) + eps; };
  DayDistribution d;
  d.radn = {pos(raw[0]), pos(raw[1])};
  d.mint = {raw[2], pos(raw[3])};
  d.diff = {pos(raw[4]), pos(raw[5])};
  d.rain = {pos(raw[6]), pos(raw[7])};
  return d;
}

HeadVector head_activation_derivative(const HeadVector& raw) {
  HeadVector out{};
  for (std::size_t j = 0; j < kHeadParams; ++j) out[j] = (j == 2) ? 1.0 : ad::sigmoid(raw[j]);
  return out;
}

HeadVector to_head_vector(const DayDistribution& d) {
  return {d.radn.alpha, d.radn.beta, d.mint.mu, d.mint.sigma, d.diff.alpha, d.diff.beta, d.rain.alpha, d.rain.beta};
}

Rng make_stream(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

namespace {

// log of a Gamma(alpha, 1) draw for alpha >= 1.
double log_gamma_draw_unit(double alpha, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d) + std::log(v);
    if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d) + std::log(v);
  }
}

}  // namespace

double sample_gamma(const GammaParams& p, Rng& rng) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0)) throw DomainError("gamma parameters must be positive");
  double log_draw = 0.0;
  if (p.alpha >= 1.0) {
    log_draw = log_gamma_draw_unit(p.alpha, rng);
  } else {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double base = log_gamma_draw_unit(p.alpha + 1.0, rng);
    double u = 0.0;
    do {
      u = uniform(rng);
    } while (u <= 0.0);
    log_draw = base + std::log(u) / p.alpha;
  }
  const double x = std::exp(log_draw - std::log(p.beta));
  // Extremely small shapes can underflow; keep the draw inside the support.
  return x > 0.0 ? x : std::numeric_limits<double>::min();
}

double sample_normal(const NormalParams& p, Rng& rng) {
  std::normal_distribution<double> normal(p.mu, p.sigma);
  return normal(rng);
}

}  // namespace wxgen
