// SPDX-License-Identifier: Apache-2.0
//
// Autoregressive ensemble generation from a trained network.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wxgen/ensemble.hpp"
#include "wxgen/likelihood.hpp"
#include "wxgen/model/network.hpp"
#include "wxgen/weather_data.hpp"

namespace wxgen {

struct GenerationRequest {
  /// Observed model-space days; the last t0 of them condition the network.
  TransformedSeries conditioning;
  std::size_t horizon = 0;
  std::size_t n_samples = 1000;
  std::uint64_t master_seed = 1;
  /// First generated day; must be the day after the conditioning ends.
  std::optional<Date> start_date;
  std::size_t threads = 1;
  std::string checkpoint_id;
};

/// Draws one model-space value of variable `v` for horizon day `day` from
/// the head's distribution. For mint only `normal` is set, otherwise only
/// `gamma`.
using DrawFn = std::function<double(std::size_t day, Variable v, const DayDistribution& dist, Rng& rng)>;

/// The standard draw: gamma or normal sample from the matching head.
double default_draw(std::size_t day, Variable v, const DayDistribution& dist, Rng& rng);

/// One sample path in model space. For each horizon day the heads are
/// evaluated in order radn, mint, diff, rain; each sampled value (gamma
/// variables floored at `zero_floor`) is standardised and written into the
/// window before the next head is evaluated.
std::vector<DayVector> generate_member(const WeatherNet& net, std::span<const DayVector> conditioning_tail,
                                       double zero_floor, Rng& rng, const DrawFn& draw = default_draw);

/// Member k uses make_stream(master_seed, k), so members are independent
/// of each other and of the thread count.
Ensemble generate(const WeatherNet& net, const GenerationRequest& request);

}  // namespace wxgen
