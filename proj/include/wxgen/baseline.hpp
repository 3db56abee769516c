// SPDX-License-Identifier: Apache-2.0
//
// The conventional method: each member is a verbatim run of history that
// starts on the target's month and day in a year drawn uniformly from the
// `years_back` years before the target year.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wxgen/ensemble.hpp"
#include "wxgen/weather_data.hpp"

namespace wxgen {

struct BaselineRequest {
  WeatherSeries history;
  Date target_start;
  std::size_t horizon = 0;
  std::size_t years_back = 30;
  std::size_t n_samples = 1000;
  std::uint64_t master_seed = 1;
};

/// target year - years_back .. target year - 1, ascending.
std::vector<int> candidate_years(const Date& target_start, std::size_t years_back);

/// The target's month and day in `year`; Feb 29 becomes Mar 1 in non-leap years.
Date aligned_start(int year, const Date& target_start);

/// Index into candidate_years() for member k.
std::size_t draw_candidate(std::uint64_t master_seed, std::size_t member, std::size_t years_back);

/// Every candidate window is checked before any member is drawn; a window
/// that history does not cover raises CoverageError naming its year.
Ensemble baseline_generate(const BaselineRequest& request);

}  // namespace wxgen
