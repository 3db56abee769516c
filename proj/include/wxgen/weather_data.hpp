// SPDX-License-Identifier: Apache-2.0
//
// Daily weather series: ingestion, the model-space transform
// (maxt -> diff = maxt - mint, zero floor on gamma variables),
// standardisation and training-window slicing.

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wxgen/dates.hpp"

namespace wxgen {

/// Model-space variable order. Also the within-day sampling order.
enum class Variable : std::size_t { radn = 0, mint = 1, diff = 2, rain = 3 };
inline constexpr std::size_t kVariableCount = 4;
inline constexpr std::array<std::string_view, kVariableCount> kModelVariableNames{"radn", "mint", "diff", "rain"};

using DayVector = std::array<double, kVariableCount>;

inline constexpr double kDefaultZeroFloor = 1e-3;

struct DailyRecord {
  Date date;
  double radn = 0.0;  // MJ/m^2
  double mint = 0.0;  // degC
  double maxt = 0.0;  // degC
  double rain = 0.0;  // mm

  friend bool operator==(const DailyRecord&, const DailyRecord&) = default;
};

struct Location {
  std::string name;
  double latitude = 0.0;
};

/// Gap-free run of daily records. Construction validates the physical
/// constraints and calendar continuity.
class WeatherSeries {
 public:
  WeatherSeries() = default;
  explicit WeatherSeries(std::vector<DailyRecord> records, Location location = {});

  const std::vector<DailyRecord>& records() const { return records_; }
  const DailyRecord& operator[](std::size_t i) const { return records_[i]; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const Location& location() const { return location_; }
  void set_location(Location location) { location_ = std::move(location); }

  Date first_date() const;
  Date last_date() const;
  std::optional<std::size_t> index_of(const Date& d) const;
  WeatherSeries slice(std::size_t begin, std::size_t count) const;

 private:
  std::vector<DailyRecord> records_;
  Location location_;
};

/// Parses delimited text with a header naming date, radn, mint, maxt and
/// rain (extra columns are ignored). Leading `# location=...` and
/// `# latitude=...` lines set the location metadata.
WeatherSeries parse_weather_csv(std::string_view text);
std::string format_weather_csv(const WeatherSeries& series);

struct TransformedSeries {
  Date start;
  std::vector<DayVector> days;
  double zero_floor = kDefaultZeroFloor;

  std::size_t size() const { return days.size(); }
  Date date_at(std::size_t i) const { return add_days(start, static_cast<long long>(i)); }
  TransformedSeries slice(std::size_t begin, std::size_t count) const;
};

/// diff = maxt - mint; radn, diff and rain values below zero_floor
/// (in practice, zeros) are raised to zero_floor. mint is untouched.
TransformedSeries to_model_space(const WeatherSeries& series, double zero_floor = kDefaultZeroFloor);

struct RawDay {
  double radn = 0.0;
  double mint = 0.0;
  double maxt = 0.0;
  double rain = 0.0;

  friend bool operator==(const RawDay&, const RawDay&) = default;
};

/// Inverse transform of one model-space day: maxt = mint + diff.
RawDay from_model_space(const DayVector& day);

/// Per-variable mean and population standard deviation.
struct StandardizationStats {
  DayVector mean{};
  DayVector std{};
  Date first;
  Date last;

  DayVector apply(const DayVector& day) const;
};

StandardizationStats fit_standardization(const TransformedSeries& train);
std::vector<DayVector> standardize(const TransformedSeries& series, const StandardizationStats& stats);

/// All length-T slices of a series. Window k covers days
/// [start_k, start_k + T); its first t0 days condition the model and the
/// remaining T - t0 days are targets.
struct TrainingWindowSet {
  std::shared_ptr<const TransformedSeries> source;
  std::size_t window_length = 0;  // T
  std::size_t conditioning = 0;   // t0
  std::vector<std::size_t> starts;

  std::size_t count() const { return starts.size(); }
  std::size_t horizon() const { return window_length - conditioning; }
};

TrainingWindowSet make_windows(std::shared_ptr<const TransformedSeries> series, std::size_t window_length,
                               std::size_t conditioning);
TrainingWindowSet make_windows(const TransformedSeries& series, std::size_t window_length,
                               std::size_t conditioning);

/// Splits at `boundary`: train ends on boundary (inclusive), test starts
/// the following day.
std::pair<WeatherSeries, WeatherSeries> split_by_date(const WeatherSeries& series, const Date& boundary);

}  // namespace wxgen
