// SPDX-License-Identifier: Apache-2.0
//
// Weather error tables and yield error statistics.
//
// Error table for one smoothing period: within each period, average the
// generated values of each member and the true values; take the absolute
// difference of the two means; average over members. Periods of the same
// kind that recur (multi-year horizons) are folded into one row, and the
// summary row averages over rows.
//
//   day    one row per day
//   week   7-day blocks from the start date within each 365-day stretch;
//          block 53 (the trailing 1-2 days) is dropped; 52 rows
//   month  calendar months, folded by month name; 12 rows for a year

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wxgen/ensemble.hpp"
#include "wxgen/weather_data.hpp"

namespace wxgen {

enum class Period { day, week, month };

Period parse_period(std::string_view text);
std::string_view period_name(Period p);

/// Column order of every table.
inline constexpr std::array<std::string_view, 4> kTableVariables{"radn", "mint", "maxt", "rain"};

struct ErrorRow {
  std::string label;
  std::array<double, 4> values{};
};

struct ErrorTable {
  Period period = Period::day;
  std::vector<ErrorRow> rows;
  std::array<double, 4> average{};
};

/// `truth` must cover the ensemble's dates (it may extend beyond them).
ErrorTable smoothed_abs_error(const Ensemble& ensemble, const WeatherSeries& truth, Period period);

/// CSV: header `period,radn,mint,maxt,rain`, one line per row, then `Average`.
std::string format_error_table(const ErrorTable& table);

struct YieldErrorStats {
  double mean = 0.0;
  double std = 0.0;  // population
};

/// Mean and population standard deviation of |yield_k - truth|.
YieldErrorStats yield_error_stats(std::span<const double> sample_yields, double true_yield);

struct YieldRecord {
  std::size_t member = 0;
  std::string crop;
  std::string slot;  // year or rotation position
  double yield = 0.0;
};

/// Header `member,crop,slot,yield_kg_ha`.
std::vector<YieldRecord> parse_yield_csv(std::string_view text);

/// Header `crop,slot,yield_kg_ha`.
std::map<std::pair<std::string, std::string>, double> parse_true_yield_csv(std::string_view text);

/// Per (crop, slot) error stats for one method's simulated yields.
std::map<std::pair<std::string, std::string>, YieldErrorStats> yield_table(
    const std::vector<YieldRecord>& samples, const std::map<std::pair<std::string, std::string>, double>& truth);

struct Comparison {
  std::size_t a_wins = 0;
  std::size_t b_wins = 0;
  std::size_t ties = 0;
  std::size_t total() const { return a_wins + b_wins + ties; }
};

/// Smaller is better; keys must match exactly.
Comparison compare_methods(const std::map<std::string, double>& a, const std::map<std::string, double>& b);

/// Metric keys "crop/slot/mean" and "crop/slot/std".
std::map<std::string, double> yield_metrics(const std::map<std::pair<std::string, std::string>, YieldErrorStats>& table);

/// Metric keys "period/row label/variable" plus "period/Average/variable".
std::map<std::string, double> table_metrics(const ErrorTable& table);

/// e.g. "network wins 18/18 (conventional 0, ties 0)".
std::string format_comparison(std::string_view a_name, std::string_view b_name, const Comparison& c);

}  // namespace wxgen
