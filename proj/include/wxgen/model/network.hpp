// SPDX-License-Identifier: Apache-2.0
//
// The weather network: four masked day-convolution streams (one per
// variable head) feeding one shared stack of dilated and pointwise
// convolutions.
//
// Input window layout. A window holds T standardised model-space days,
// days 1..T. Days 1..t0 are conditioning; days t0+1..T are the horizon.
// Output k (0-based) is the distribution of day t0+1+k, and it depends on
// days up to t0+k in full plus the same-day entries of day t0+1+k that
// the head's mask admits. Per stream:
//
//   pad T-t0-1 zero columns -> masked_day_conv -> drop first column
//   -> m x (dilated conv, dilation l^(k-1), tanh)
//   -> pointwise convs (relu between, none after the last)
//   -> 2 raw head values per day

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wxgen/autodiff/grid.hpp"
#include "wxgen/autodiff/parameters.hpp"
#include "wxgen/autodiff/tape.hpp"
#include "wxgen/likelihood.hpp"
#include "wxgen/model/architecture.hpp"
#include "wxgen/weather_data.hpp"

namespace wxgen {

class WeatherNet {
 public:
  /// All parameters zero.
  WeatherNet(ArchitectureSpec spec, StandardizationStats stats);

  /// Weights uniform in +-1/sqrt(fan_in) (fan_in = in_channels * width),
  /// biases zero; deterministic in `seed`.
  static WeatherNet build(ArchitectureSpec spec, StandardizationStats stats, std::uint64_t seed);

  const ArchitectureSpec& spec() const { return spec_; }
  const StandardizationStats& stats() const { return stats_; }
  const ad::ParameterStore& parameters() const { return params_; }
  ad::ParameterStore& parameters() { return params_; }

  /// Packs standardised days into a 4 x n grid.
  static ad::SequenceGrid window_grid(std::span<const DayVector> standardized_days);

  /// Raw (pre-activation) heads: 8 x horizon in HeadVector row order.
  ad::SequenceGrid raw_heads(const ad::SequenceGrid& window) const;
  std::vector<DayDistribution> forward(const ad::SequenceGrid& window) const;

  /// Raw head pair for one variable at one horizon position. Evaluates only
  /// the receptive cone of that output; bitwise equal to the matching
  /// entries of raw_heads().
  std::array<double, 2> raw_head_at(const ad::SequenceGrid& window, Variable v, std::size_t horizon_index) const;

  /// Records the teacher-forced pass and returns the summed day NLL over
  /// the horizon as a 1x1 node. `targets` are the raw model-space values of
  /// days t0+1..T.
  ad::Var record_loss(ad::Tape& tape, const ad::SequenceGrid& window, std::span<const DayVector> targets) const;

 private:
  void check_window(const ad::SequenceGrid& window) const;
  ad::SequenceGrid stream(const ad::SequenceGrid& window, std::size_t v) const;
  ad::Var record_stream(ad::Tape& tape, ad::Var padded, std::size_t v) const;

  ArchitectureSpec spec_;
  StandardizationStats stats_;
  ad::ParameterStore params_;
  std::array<std::size_t, 4> masked_ids_{};
  std::vector<std::size_t> dilated_ids_;
  std::vector<std::size_t> pointwise_ids_;
};

}  // namespace wxgen
