// SPDX-License-Identifier: Apache-2.0
//
// Crop-simulator weather files:
//
//   [weather.met.weather]
//   !station = Robe
//   latitude = -37.16 (DECIMAL DEGREES)
//   tav = 14.52 (oC) ! annual average ambient temperature
//   amp = 8.87 (oC) ! annual amplitude in mean monthly temperature
//
//   year day radn maxt mint rain
//   () () (MJ/m^2) (oC) (oC) (mm)
//   2021 78 18.20 22.40 9.10 0.00
//
// Values are printed with two decimals. tav is the mean and amp the range
// of the twelve calendar-month means of (maxt + mint) / 2, computed from
// the printed values so that emit -> parse -> emit is byte-identical.

#pragma once

#include <string>
#include <string_view>

#include "wxgen/weather_data.hpp"

namespace wxgen {

struct TemperatureSummary {
  double tav = 0.0;
  double amp = 0.0;
};

TemperatureSummary temperature_summary(const WeatherSeries& series);

std::string format_met(const WeatherSeries& series);
WeatherSeries parse_met(std::string_view text);

void write_met(const std::string& path, const WeatherSeries& series);
WeatherSeries read_met(const std::string& path);

}  // namespace wxgen
