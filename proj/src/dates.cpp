// SPDX-License-Identifier: Apache-2.0

#include "wxgen/dates.hpp"

#include <charconv>
#include <cstdio>

#include "wxgen/error.hpp"

namespace wxgen {

namespace {

int parse_field(std::string_view text, std::string_view field) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw FormatError("invalid date '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw FormatError("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
  }
  const int y = parse_field(text, text.substr(0, 4));
  const int m = parse_field(text, text.substr(5, 2));
  const int d = parse_field(text, text.substr(8, 2));
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) throw FormatError("invalid calendar date '" + std::string(text) + "'");
  return date;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year_of(d), month_of(d), day_of(d));
  return buf;
}

long long to_day_number(const Date& d) { return std::chrono::sys_days{d}.time_since_epoch().count(); }

Date from_day_number(long long days) {
  return Date{std::chrono::sys_days{std::chrono::days{days}}};
}

Date add_days(const Date& d, long long days) { return from_day_number(to_day_number(d) + days); }

long long days_between(const Date& a, const Date& b) { return to_day_number(b) - to_day_number(a); }

int day_of_year(const Date& d) {
  const Date jan1{d.year(), std::chrono::January, std::chrono::day{1}};
  return static_cast<int>(days_between(jan1, d)) + 1;
}

Date from_year_and_day(int year, int doy) {
  const Date jan1{std::chrono::year{year}, std::chrono::January, std::chrono::day{1}};
  const int days_in_year = std::chrono::year{year}.is_leap() ? 366 : 365;
  if (doy < 1 || doy > days_in_year) {
    throw FormatError("day of year " + std::to_string(doy) + " out of range for " + std::to_string(year));
  }
  return add_days(jan1, doy - 1);
}

}  // namespace wxgen
