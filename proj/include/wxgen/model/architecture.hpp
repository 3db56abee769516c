// SPDX-License-Identifier: Apache-2.0
//
// Structural hyperparameters of the weather network and the receptive-field
// arithmetic that ties them together.
//
// With base filter length l and m dilated layers (dilation l^(k-1) at layer
// k) the receptive field is l^m, the window length is T = l^m + 1 and the
// conditioning length is t0 = T - horizon. Inputs are left-padded with
// T - t0 - 1 zero day columns so every horizon day sees T - 1 positions.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "wxgen/autodiff/ops.hpp"

namespace wxgen {

/// Output channel counts, in network order: the masked day convolution, one
/// entry per dilated layer, then the pointwise layers (last must be 2).
struct ChannelLadder {
  std::size_t masked_out = 0;
  std::vector<std::size_t> dilated_out;
  std::vector<std::size_t> pointwise_out;

  /// Splits a flat list (masked, dilated x m, pointwise...) as written in
  /// configuration files, e.g. (8,16,32,64,64,32,16,8,2) with m = 4.
  static ChannelLadder from_flat(const std::vector<std::size_t>& flat, std::size_t dilated_layers);
  std::vector<std::size_t> flat() const;

  friend bool operator==(const ChannelLadder&, const ChannelLadder&) = default;
};

/// Same-day masks per head, in variable order radn, mint, diff, rain.
inline constexpr std::array<ad::DayMask, 4> kHeadMasks{{
    {false, false, false, false},
    {true, false, false, false},
    {true, true, false, false},
    {true, true, true, false},
}};

struct ArchitectureSpec {
  std::size_t base_filter = 0;     // l
  std::size_t dilated_layers = 0;  // m
  ChannelLadder channels;
  std::size_t window = 0;        // T = l^m + 1
  std::size_t conditioning = 0;  // t0
  std::size_t horizon = 0;       // T - t0
  double head_offset = 1e-3;     // epsilon added after softplus

  std::size_t receptive_field() const { return window - 1; }
  std::size_t padding() const { return window - conditioning - 1; }
  std::size_t dilation(std::size_t layer) const;  // 0-based layer index

  /// Throws PlanningError / DimensionError when any structural invariant fails.
  void validate() const;

  friend bool operator==(const ArchitectureSpec&, const ArchitectureSpec&) = default;
};

struct ConditioningRange {
  std::size_t min = 1;
  std::size_t max = static_cast<std::size_t>(-1);
};

/// Chooses T = l^m + 1 and t0 = T - horizon; fails when t0 < 1 or t0 lies
/// outside `range`.
ArchitectureSpec plan_architecture(std::size_t horizon, std::size_t base_filter, std::size_t dilated_layers,
                                   ConditioningRange range, ChannelLadder channels,
                                   double head_offset = 1e-3);

std::size_t param_count(const ArchitectureSpec& spec);

/// One line per layer: name, in -> out channels, width, dilation, output length.
std::vector<std::string> describe_layers(const ArchitectureSpec& spec);

}  // namespace wxgen
