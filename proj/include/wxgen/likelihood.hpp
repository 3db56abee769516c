// SPDX-License-Identifier: Apache-2.0
//
// Per-day likelihood heads: gamma (shape/rate) for radn, diff and rain,
// normal for mint. Negative log-likelihoods, their parameter gradients,
// the head activation and the samplers used during generation.

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>

#include "wxgen/weather_data.hpp"

namespace wxgen {

struct GammaParams {
  double alpha = 1.0;  // shape
  double beta = 1.0;   // rate: density proportional to x^(alpha-1) exp(-beta x)
};

struct NormalParams {
  double mu = 0.0;
  double sigma = 1.0;
};

struct DayDistribution {
  GammaParams radn;
  NormalParams mint;
  GammaParams diff;
  GammaParams rain;
};

/// Raw head layout: (alpha_radn, beta_radn, mu_mint, sigma_mint,
/// alpha_diff, beta_diff, alpha_rain, beta_rain), two per variable.
inline constexpr std::size_t kHeadParams = 8;
using HeadVector = std::array<double, kHeadParams>;

inline constexpr double kDefaultHeadOffset = 1e-3;

double gamma_nll(double x, const GammaParams& p);
double normal_nll(double x, const NormalParams& p);

/// d nll / d(alpha, beta).
std::array<double, 2> gamma_nll_gradient(double x, const GammaParams& p);
/// d nll / d(mu, sigma).
std::array<double, 2> normal_nll_gradient(double x, const NormalParams& p);

/// Sum of the four component terms for one model-space target day.
double day_nll(const DayVector& x, const DayDistribution& d);

struct DayNllResult {
  double value = 0.0;
  HeadVector gradient{};  // w.r.t. the distribution parameters, HeadVector layout
};
DayNllResult day_nll_with_gradient(const DayVector& x, const DayDistribution& d);

/// mu <- raw; every other parameter <- softplus(raw) + eps.
DayDistribution head_activation(const HeadVector& raw, double eps = kDefaultHeadOffset);
/// d(activated parameter)/d(raw), elementwise.
HeadVector head_activation_derivative(const HeadVector& raw);

HeadVector to_head_vector(const DayDistribution& d);

using Rng = std::mt19937_64;

/// Independent stream for `index` under `master_seed`: an mt19937_64
/// seeded through std::seed_seq with the 32-bit halves of both numbers.
Rng make_stream(std::uint64_t master_seed, std::uint64_t index);

/// Marsaglia-Tsang squeeze sampler; shapes below 1 use the
/// G(a) = G(a+1) * U^(1/a) boost, evaluated in log space.
double sample_gamma(const GammaParams& p, Rng& rng);
double sample_normal(const NormalParams& p, Rng& rng);

}  // namespace wxgen
