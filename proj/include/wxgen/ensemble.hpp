// SPDX-License-Identifier: Apache-2.0
//
// A set of weather sample paths over one date range, plus where it came
// from. Stored as delimited text:
//
//   # method=network
//   # seed=1
//   ...
//   member,date,radn,mint,maxt,rain
//   0,2021-03-19,18.2,9.1,21.4,0
//
// Values are written in shortest round-trip form, so parse(format(e)) == e.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wxgen/dates.hpp"
#include "wxgen/weather_data.hpp"

namespace wxgen {

struct Provenance {
  std::string method;  // "network" or "conventional"
  std::uint64_t seed = 0;
  std::optional<Date> conditioning_first;
  std::optional<Date> conditioning_last;
  std::string checkpoint_id;
  /// Conventional method: the historical start date each member was copied from.
  std::vector<Date> member_sources;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Ensemble {
  Provenance provenance;
  Date start;
  std::size_t horizon = 0;
  std::vector<std::vector<RawDay>> members;  // members[k][day]

  std::size_t size() const { return members.size(); }
  Date date_at(std::size_t day) const { return add_days(start, static_cast<long long>(day)); }
  Date last_date() const { return date_at(horizon - 1); }
  /// Member k as a validated daily series.
  WeatherSeries member_series(std::size_t k, Location location = {}) const;
  /// Throws when a member's length differs from the horizon.
  void validate() const;

  friend bool operator==(const Ensemble&, const Ensemble&) = default;
};

/// Joins consecutive blocks (same member count, each starting the day after
/// the previous one ends) into one ensemble. Provenance of the first block
/// is kept.
Ensemble concatenate(std::span<const Ensemble> blocks);

std::string format_ensemble_csv(const Ensemble& ensemble);
Ensemble parse_ensemble_csv(std::string_view text);
void write_ensemble(const std::string& path, const Ensemble& ensemble);
Ensemble read_ensemble(const std::string& path);

}  // namespace wxgen
