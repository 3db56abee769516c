// SPDX-License-Identifier: Apache-2.0

#include "wxgen/met_file.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "wxgen/error.hpp"
#include "wxgen/text.hpp"

namespace wxgen {

namespace {

constexpr int kDecimals = 2;

double printed(double v) { return parse_double(format_fixed(v, kDecimals), "value"); }

}  // namespace

TemperatureSummary temperature_summary(const WeatherSeries& series) {
  if (series.empty()) throw InsufficientDataError(0, 1);
  std::array<double, 12> sum{};
  std::array<std::size_t, 12> count{};
  for (const DailyRecord& r : series.records()) {
    const unsigned m = month_of(r.date) - 1;
    sum[m] += (printed(r.maxt) + printed(r.mint)) / 2.0;
    ++count[m];
  }
  double total = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t months = 0;
  for (std::size_t m = 0; m < 12; ++m) {
    if (count[m] == 0) continue;
    const double mean = sum[m] / static_cast<double>(count[m]);
    lo = months == 0 ? mean : std::min(lo, mean);
    hi = months == 0 ? mean : std::max(hi, mean);
    total += mean;
    ++months;
  }
  return {total / static_cast<double>(months), hi - lo};
}

std::string format_met(const WeatherSeries& series) {
  const TemperatureSummary summary = temperature_summary(series);
  std::ostringstream os;
  os << "[weather.met.weather]\n";
  if (!series.location().name.empty()) os << "!station = " << series.location().name << '\n';
  os << "latitude = " << format_fixed(series.location().latitude, kDecimals) << " (DECIMAL DEGREES)\n";
  os << "tav = " << format_fixed(summary.tav, kDecimals) << " (oC) ! annual average ambient temperature\n";
  os << "amp = " << format_fixed(summary.amp, kDecimals) << " (oC) ! annual amplitude in mean monthly temperature\n";
  os << '\n';
  os << "year day radn maxt mint rain\n";
  os << "() () (MJ/m^2) (oC) (oC) (mm)\n";
  for (const DailyRecord& r : series.records()) {
    os << year_of(r.date) << ' ' << day_of_year(r.date) << ' ' << format_fixed(r.radn, kDecimals) << ' '
       << format_fixed(r.maxt, kDecimals) << ' ' << format_fixed(r.mint, kDecimals) << ' '
       << format_fixed(r.rain, kDecimals) << '\n';
  }
  return os.str();
}

WeatherSeries parse_met(std::string_view text) {
  Location location;
  std::map<std::string, std::size_t> columns;
  std::vector<DailyRecord> records;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '[' || line.front() == '(') continue;
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (line.front() == '!') {
      const std::string_view body = trim(line.substr(1));
      const std::size_t eq = body.find('=');
      if (eq != std::string_view::npos && to_lower(trim(body.substr(0, eq))) == "station") {
        location.name = std::string(trim(body.substr(eq + 1)));
      }
      continue;
    }
    if (const std::size_t bang = line.find('!'); bang != std::string_view::npos) line = trim(line.substr(0, bang));
    if (const std::size_t eq = line.find('='); eq != std::string_view::npos) {
      const std::string key = to_lower(trim(line.substr(0, eq)));
      const auto value = split_whitespace(line.substr(eq + 1));
      if (key == "latitude" && !value.empty()) location.latitude = parse_double(value[0], "latitude");
      continue;
    }
    const auto fields = split_whitespace(line);
    if (columns.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) columns[to_lower(fields[i])] = i;
      for (const char* name : {"year", "day", "radn", "maxt", "mint", "rain"}) {
        if (!columns.contains(name)) throw FormatError(std::string("weather file lacks a '") + name + "' column" + where);
      }
      continue;
    }
    if (fields.size() < columns.size()) throw FormatError("short data row" + where);
    auto field = [&](const char* name) { return fields[columns.at(name)]; };
    const auto year = static_cast<int>(parse_integer(field("year"), "year"));
    const auto day = static_cast<int>(parse_integer(field("day"), "day"));
    DailyRecord r;
    r.date = from_year_and_day(year, day);
    r.radn = parse_double(field("radn"), "radn");
    r.maxt = parse_double(field("maxt"), "maxt");
    r.mint = parse_double(field("mint"), "mint");
    r.rain = parse_double(field("rain"), "rain");
    records.push_back(r);
  }
  if (columns.empty()) throw FormatError("weather file has no column line");
  return WeatherSeries(std::move(records), std::move(location));
}

void write_met(const std::string& path, const WeatherSeries& series) { write_file(path, format_met(series)); }

WeatherSeries read_met(const std::string& path) { return parse_met(read_file(path)); }

}  // namespace wxgen
