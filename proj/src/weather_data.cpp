// SPDX-License-Identifier: Apache-2.0

#include "wxgen/weather_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "wxgen/error.hpp"
#include "wxgen/text.hpp"

namespace wxgen {

namespace {

void check_record(const DailyRecord& r, std::size_t row) {
  for (double v : {r.radn, r.mint, r.maxt, r.rain}) {
    if (!std::isfinite(v)) throw ConstraintError(row, "non-finite value on " + format_date(r.date));
  }
  if (r.maxt < r.mint) {
    throw ConstraintError(row, "maxt " + std::to_string(r.maxt) + " < mint " + std::to_string(r.mint) + " on " +
                                   format_date(r.date));
  }
  if (r.radn < 0.0) throw ConstraintError(row, "negative radn on " + format_date(r.date));
  if (r.rain < 0.0) throw ConstraintError(row, "negative rain on " + format_date(r.date));
}

void check_continuity(const Date& prev, const Date& next) {
  const long long step = days_between(prev, next);
  if (step == 1) return;
  if (step <= 0) throw FormatError("dates out of order or duplicated at " + format_date(next));
  throw GapError(format_date(prev), format_date(next), format_date(add_days(prev, 1)));
}

}  // namespace

WeatherSeries::WeatherSeries(std::vector<DailyRecord> records, Location location)
    : records_(std::move(records)), location_(std::move(location)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    check_record(records_[i], i + 1);
    if (i > 0) check_continuity(records_[i - 1].date, records_[i].date);
  }
}

Date WeatherSeries::first_date() const {
  if (records_.empty()) throw RangeError("empty weather series has no first date");
  return records_.front().date;
}

Date WeatherSeries::last_date() const {
  if (records_.empty()) throw RangeError("empty weather series has no last date");
  return records_.back().date;
}

std::optional<std::size_t> WeatherSeries::index_of(const Date& d) const {
  if (records_.empty()) return std::nullopt;
  const long long offset = days_between(records_.front().date, d);
  if (offset < 0 || offset >= static_cast<long long>(records_.size())) return std::nullopt;
  return static_cast<std::size_t>(offset);
}

WeatherSeries WeatherSeries::slice(std::size_t begin, std::size_t count) const {
  if (begin + count > records_.size()) throw RangeError("slice exceeds weather series");
  WeatherSeries out;
  out.records_.assign(records_.begin() + static_cast<std::ptrdiff_t>(begin),
                      records_.begin() + static_cast<std::ptrdiff_t>(begin + count));
  out.location_ = location_;
  return out;
}

WeatherSeries parse_weather_csv(std::string_view text) {
  Location location;
  std::map<std::string, std::size_t> columns;
  bool have_header = false;
  struct Row {
    DailyRecord record;
    std::size_t line;
  };
  std::vector<Row> rows;

  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto kv = trim(line.substr(1));
      const auto eq = kv.find('=');
      if (eq != std::string_view::npos) {
        const auto key = trim(kv.substr(0, eq));
        const auto value = trim(kv.substr(eq + 1));
        if (key == "location") location.name = std::string(value);
        if (key == "latitude") location.latitude = parse_double(value, "latitude");
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (!have_header) {
      for (std::size_t i = 0; i < fields.size(); ++i) columns[to_lower(trim(fields[i]))] = i;
      for (const char* required : {"date", "radn", "mint", "maxt", "rain"}) {
        if (!columns.count(required)) {
          throw FormatError(std::string("weather CSV header is missing column '") + required + "'");
        }
      }
      have_header = true;
      continue;
    }
    auto field = [&](const char* name) -> std::string_view {
      const std::size_t idx = columns.at(name);
      if (idx >= fields.size()) {
        throw FormatError("line " + std::to_string(line_no) + ": missing field '" + name + "'");
      }
      return trim(fields[idx]);
    };
    auto number = [&](const char* name) {
      try {
        return parse_double(field(name), name);
      } catch (const FormatError& e) {
        throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
      }
    };
    DailyRecord r;
    r.date = parse_date(field("date"));
    r.radn = number("radn");
    r.mint = number("mint");
    r.maxt = number("maxt");
    r.rain = number("rain");
    check_record(r, line_no);
    rows.push_back({r, line_no});
  }
  if (!have_header) throw FormatError("weather CSV has no header row");

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return to_day_number(a.record.date) < to_day_number(b.record.date);
  });
  std::vector<DailyRecord> records;
  records.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) check_continuity(rows[i - 1].record.date, rows[i].record.date);
    records.push_back(rows[i].record);
  }
  return WeatherSeries(std::move(records), std::move(location));
}

std::string format_weather_csv(const WeatherSeries& series) {
  std::ostringstream os;
  if (!series.location().name.empty()) os << "# location=" << series.location().name << '\n';
  os << "# latitude=" << format_real(series.location().latitude) << '\n';
  os << "date,radn,mint,maxt,rain\n";
  for (const auto& r : series.records()) {
    os << format_date(r.date) << ',' << format_real(r.radn) << ',' << format_real(r.mint) << ','
       << format_real(r.maxt) << ',' << format_real(r.rain) << '\n';
  }
  return os.str();
}

TransformedSeries TransformedSeries::slice(std::size_t begin, std::size_t count) const {
  if (begin + count > days.size()) throw RangeError("slice exceeds transformed series");
  TransformedSeries out;
  out.start = date_at(begin);
  out.days.assign(days.begin() + static_cast<std::ptrdiff_t>(begin),
                  days.begin() + static_cast<std::ptrdiff_t>(begin + count));
  out.zero_floor = zero_floor;
  return out;
}

TransformedSeries to_model_space(const WeatherSeries& series, double zero_floor) {
  if (!(zero_floor > 0.0)) throw DomainError("zero floor must be positive");
  TransformedSeries out;
  out.zero_floor = zero_floor;
  if (series.empty()) return out;
  out.start = series.first_date();
  out.days.reserve(series.size());
  for (const auto& r : series.records()) {
    out.days.push_back({std::max(r.radn, zero_floor), r.mint, std::max(r.maxt - r.mint, zero_floor),
                        std::max(r.rain, zero_floor)});
  }
  return out;
}

RawDay from_model_space(const DayVector& day) {
  const double diff = day[static_cast<std::size_t>(Variable::diff)];
  if (!(diff > 0.0)) throw DomainError("diff must be positive, got " + std::to_string(diff));
  const double mint = day[static_cast<std::size_t>(Variable::mint)];
  return {day[static_cast<std::size_t>(Variable::radn)], mint, mint + diff,
          day[static_cast<std::size_t>(Variable::rain)]};
}

DayVector StandardizationStats::apply(const DayVector& day) const {
  DayVector out{};
  for (std::size_t v = 0; v < kVariableCount; ++v) out[v] = (day[v] - mean[v]) / std[v];
  return out;
}

StandardizationStats fit_standardization(const TransformedSeries& train) {
  const std::size_t n = train.size();
  if (n < 2) throw InsufficientDataError(n, 2);
  StandardizationStats stats;
  for (std::size_t v = 0; v < kVariableCount; ++v) {
    double sum = 0.0;
    for (const auto& d : train.days) sum += d[v];
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& d : train.days) ss += (d[v] - mean) * (d[v] - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    if (!(sd > 0.0)) {
      throw DegenerateDataError("variable '" + std::string(kModelVariableNames[v]) +
                                "' has zero variance over the fitted range");
    }
    stats.mean[v] = mean;
    stats.std[v] = sd;
  }
  stats.first = train.start;
  stats.last = train.date_at(n - 1);
  return stats;
}

std::vector<DayVector> standardize(const TransformedSeries& series, const StandardizationStats& stats) {
  std::vector<DayVector> out;
  out.reserve(series.size());
  for (const auto& d : series.days) out.push_back(stats.apply(d));
  return out;
}

TrainingWindowSet make_windows(std::shared_ptr<const TransformedSeries> series, std::size_t window_length,
                               std::size_t conditioning) {
  if (conditioning == 0 || conditioning >= window_length) {
    throw DomainError("conditioning length t0=" + std::to_string(conditioning) + " must satisfy 0 < t0 < T=" +
                      std::to_string(window_length));
  }
  const std::size_t n = series->size();
  if (n < window_length) throw InsufficientDataError(n, window_length);
  TrainingWindowSet set;
  set.window_length = window_length;
  set.conditioning = conditioning;
  set.starts.resize(n - window_length + 1);
  for (std::size_t k = 0; k < set.starts.size(); ++k) set.starts[k] = k;
  set.source = std::move(series);
  return set;
}

TrainingWindowSet make_windows(const TransformedSeries& series, std::size_t window_length,
                               std::size_t conditioning) {
  return make_windows(std::make_shared<const TransformedSeries>(series), window_length, conditioning);
}

std::pair<WeatherSeries, WeatherSeries> split_by_date(const WeatherSeries& series, const Date& boundary) {
  const auto idx = series.index_of(boundary);
  if (!idx) {
    throw RangeError("split date " + format_date(boundary) + " is outside the series range" +
                     (series.empty() ? std::string()
                                     : " " + format_date(series.first_date()) + ".." + format_date(series.last_date())));
  }
  const std::size_t train_len = *idx + 1;
  return {series.slice(0, train_len), series.slice(train_len, series.size() - train_len)};
}

}  // namespace wxgen
