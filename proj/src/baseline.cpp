// SPDX-License-Identifier: Apache-2.0

#include "wxgen/baseline.hpp"

#include <random>

#include "wxgen/error.hpp"
#include "wxgen/likelihood.hpp"

namespace wxgen {

std::vector<int> candidate_years(const Date& target_start, std::size_t years_back) {
  if (years_back < 1) throw ConfigError("years_back must be at least 1");
  std::vector<int> years;
  const int target = year_of(target_start);
  for (std::size_t i = years_back; i >= 1; --i) years.push_back(target - static_cast<int>(i));
  return years;
}

Date aligned_start(int year, const Date& target_start) {
  const Date d{std::chrono::year{year}, target_start.month(), target_start.day()};
  if (d.ok()) return d;
  // Only Feb 29 can fail for a valid target date.
  return Date{std::chrono::year{year}, std::chrono::March, std::chrono::day{1}};
}

std::size_t draw_candidate(std::uint64_t master_seed, std::size_t member, std::size_t years_back) {
  Rng rng = make_stream(master_seed, member);
  std::uniform_int_distribution<std::size_t> pick(0, years_back - 1);
  return pick(rng);
}

Ensemble baseline_generate(const BaselineRequest& request) {
  if (request.horizon < 1) throw DimensionError("baseline horizon", 1, 0);
  if (request.n_samples < 1) throw DimensionError("ensemble members", 1, 0);
  if (request.history.empty()) throw InsufficientDataError(0, request.horizon);
  const std::vector<int> years = candidate_years(request.target_start, request.years_back);

  std::vector<std::size_t> first_index;
  for (int year : years) {
    const Date start = aligned_start(year, request.target_start);
    const auto index = request.history.index_of(start);
    const Date last = add_days(start, static_cast<long long>(request.horizon) - 1);
    if (!index || !request.history.index_of(last)) {
      throw CoverageError("history does not cover " + format_date(start) + ".." + format_date(last), year);
    }
    first_index.push_back(*index);
  }

  Ensemble e;
  e.start = request.target_start;
  e.horizon = request.horizon;
  e.provenance.method = "conventional";
  e.provenance.seed = request.master_seed;
  const auto& records = request.history.records();
  for (std::size_t k = 0; k < request.n_samples; ++k) {
    const std::size_t c = draw_candidate(request.master_seed, k, request.years_back);
    const std::size_t first = first_index[c];
    std::vector<RawDay> member;
    member.reserve(request.horizon);
    for (std::size_t t = 0; t < request.horizon; ++t) {
      const DailyRecord& r = records[first + t];
      member.push_back({r.radn, r.mint, r.maxt, r.rain});
    }
    e.members.push_back(std::move(member));
    e.provenance.member_sources.push_back(records[first].date);
  }
  return e;
}

}  // namespace wxgen
