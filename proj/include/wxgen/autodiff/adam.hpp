// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wxgen::ad {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Moment estimates aligned to a ParameterStore's flattening.
struct AdamState {
  AdamState() = default;
  AdamState(std::size_t parameter_count, AdamConfig cfg);

  AdamConfig config;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::uint64_t step_count = 0;
};

/// One bias-corrected Adam update, in place:
///   m <- b1 m + (1-b1) g,  v <- b2 v + (1-b2) g^2
///   p <- p - lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state);

}  // namespace wxgen::ad
