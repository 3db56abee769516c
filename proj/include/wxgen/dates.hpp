// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace wxgen {

using Date = std::chrono::year_month_day;

/// Parses YYYY-MM-DD; throws FormatError on anything else.
Date parse_date(std::string_view text);
std::string format_date(const Date& d);

Date add_days(const Date& d, long long days);
/// b - a in days.
long long days_between(const Date& a, const Date& b);
/// Days since 1970-01-01.
long long to_day_number(const Date& d);
Date from_day_number(long long days);

/// 1-based day of year.
int day_of_year(const Date& d);
Date from_year_and_day(int year, int day_of_year);

inline int year_of(const Date& d) { return static_cast<int>(d.year()); }
inline unsigned month_of(const Date& d) { return static_cast<unsigned>(d.month()); }
inline unsigned day_of(const Date& d) { return static_cast<unsigned>(d.day()); }

}  // namespace wxgen
