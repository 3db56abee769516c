// SPDX-License-Identifier: Apache-2.0

#include "wxgen/autodiff/adam.hpp"

#include <cmath>

#include "wxgen/error.hpp"

namespace wxgen::ad {

AdamState::AdamState(std::size_t parameter_count, AdamConfig cfg)
    : config(cfg), first_moment(parameter_count, 0.0), second_moment(parameter_count, 0.0) {
  if (!(cfg.lr > 0.0)) throw DomainError("Adam learning rate must be positive");
  if (cfg.beta1 < 0.0 || cfg.beta1 >= 1.0 || cfg.beta2 < 0.0 || cfg.beta2 >= 1.0) {
    throw DomainError("Adam betas must lie in [0, 1)");
  }
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state) {
  if (grads.size() != params.size()) throw DimensionError("gradient length", params.size(), grads.size());
  if (state.first_moment.size() != params.size()) {
    throw DimensionError("Adam moment length", params.size(), state.first_moment.size());
  }
  const AdamConfig& c = state.config;
  ++state.step_count;
  const double t = static_cast<double>(state.step_count);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = c.beta1 * m + (1.0 - c.beta1) * g;
    v = c.beta2 * v + (1.0 - c.beta2) * g * g;
    const double m_hat = m / correction1;
    const double v_hat = v / correction2;
    params[i] -= c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
  }
}

}  // namespace wxgen::ad
