// SPDX-License-Identifier: Apache-2.0

#include "wxgen/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wxgen/error.hpp"
#include "wxgen/text.hpp"

namespace wxgen {

namespace {

constexpr std::array<std::string_view, 12> kMonthNames{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                       "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
constexpr std::size_t kDaysPerStretch = 365;
constexpr std::size_t kWeeksPerStretch = 52;

struct Group {
  std::size_t row = 0;
  std::vector<std::size_t> days;
};

struct Grouping {
  std::vector<std::string> labels;
  std::vector<Group> groups;
};

Grouping make_grouping(const Ensemble& e, Period period) {
  Grouping g;
  switch (period) {
    case Period::day:
      for (std::size_t i = 0; i < e.horizon; ++i) {
        g.labels.push_back(format_date(e.date_at(i)));
        g.groups.push_back({i, {i}});
      }
      break;
    case Period::week: {
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
      for (std::size_t i = 0; i < e.horizon; ++i) {
        const std::size_t stretch = i / kDaysPerStretch;
        const std::size_t block = (i % kDaysPerStretch) / 7;
        if (block >= kWeeksPerStretch) continue;
        auto [it, inserted] = index.try_emplace({stretch, block}, g.groups.size());
        if (inserted) g.groups.push_back({block, {}});
        g.groups[it->second].days.push_back(i);
      }
      const std::size_t weeks = std::min<std::size_t>(kWeeksPerStretch, (std::min(e.horizon, kDaysPerStretch)) / 7);
      for (std::size_t b = 0; b < weeks; ++b) g.labels.push_back("Week " + std::to_string(b + 1));
      // Drop partial trailing weeks of a short final stretch.
      std::erase_if(g.groups, [&](const Group& grp) { return grp.days.size() != 7 || grp.row >= weeks; });
      break;
    }
    case Period::month: {
      std::map<std::pair<int, unsigned>, std::size_t> index;
      std::map<unsigned, std::size_t> row_of_month;
      for (std::size_t i = 0; i < e.horizon; ++i) {
        const Date d = e.date_at(i);
        const unsigned month = month_of(d);
        auto [row_it, new_row] = row_of_month.try_emplace(month, g.labels.size());
        if (new_row) g.labels.emplace_back(kMonthNames[month - 1]);
        auto [it, inserted] = index.try_emplace({year_of(d), month}, g.groups.size());
        if (inserted) g.groups.push_back({row_it->second, {}});
        g.groups[it->second].days.push_back(i);
      }
      break;
    }
  }
  return g;
}

std::array<double, 4> table_values(const RawDay& d) { return {d.radn, d.mint, d.maxt, d.rain}; }

}  // namespace

Period parse_period(std::string_view text) {
  const std::string s = to_lower(trim(text));
  if (s == "day") return Period::day;
  if (s == "week") return Period::week;
  if (s == "month") return Period::month;
  throw ConfigError("unknown period '" + s + "' (expected day, week or month)");
}

std::string_view period_name(Period p) {
  switch (p) {
    case Period::day:
      return "day";
    case Period::week:
      return "week";
    case Period::month:
      return "month";
  }
  return "?";
}

ErrorTable smoothed_abs_error(const Ensemble& ensemble, const WeatherSeries& truth, Period period) {
  ensemble.validate();
  if (ensemble.size() == 0 || ensemble.horizon == 0) throw DimensionError("ensemble members", 1, 0);
  const auto first = truth.index_of(ensemble.start);
  if (!first || !truth.index_of(ensemble.last_date())) {
    const std::string truth_range =
        truth.empty() ? std::string("empty") : format_date(truth.first_date()) + ".." + format_date(truth.last_date());
    throw RangeError("truth covers " + truth_range + " but the ensemble spans " + format_date(ensemble.start) + ".." +
                     format_date(ensemble.last_date()));
  }
  const Grouping grouping = make_grouping(ensemble, period);
  const std::size_t n_rows = grouping.labels.size();
  const std::size_t n_members = ensemble.size();

  std::vector<std::array<double, 4>> row_sum(n_rows);
  std::vector<std::size_t> row_groups(n_rows, 0);
  std::vector<double> member_errors(n_members);
  for (const Group& group : grouping.groups) {
    const double n = static_cast<double>(group.days.size());
    std::array<double, 4> true_mean{};
    for (std::size_t i : group.days) {
      const DailyRecord& r = truth[*first + i];
      const std::array<double, 4> v{r.radn, r.mint, r.maxt, r.rain};
      for (std::size_t c = 0; c < 4; ++c) true_mean[c] += v[c];
    }
    for (double& m : true_mean) m /= n;
    for (std::size_t c = 0; c < 4; ++c) {
      for (std::size_t k = 0; k < n_members; ++k) {
        double sum = 0.0;
        for (std::size_t i : group.days) sum += table_values(ensemble.members[k][i])[c];
        member_errors[k] = std::abs(sum / n - true_mean[c]);
      }
      // Sorted so the member average does not depend on member order.
      std::sort(member_errors.begin(), member_errors.end());
      double total = 0.0;
      for (double err : member_errors) total += err;
      row_sum[group.row][c] += total / static_cast<double>(n_members);
    }
    ++row_groups[group.row];
  }

  ErrorTable table;
  table.period = period;
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (row_groups[r] == 0) continue;
    ErrorRow row{grouping.labels[r], {}};
    for (std::size_t c = 0; c < 4; ++c) row.values[c] = row_sum[r][c] / static_cast<double>(row_groups[r]);
    table.rows.push_back(std::move(row));
  }
  for (const ErrorRow& row : table.rows) {
    for (std::size_t c = 0; c < 4; ++c) table.average[c] += row.values[c];
  }
  for (double& a : table.average) a /= static_cast<double>(table.rows.size());
  return table;
}

std::string format_error_table(const ErrorTable& table) {
  std::ostringstream os;
  os << "period,radn,mint,maxt,rain\n";
  auto line = [&os](std::string_view label, const std::array<double, 4>& v) {
    os << label;
    for (double x : v) os << ',' << format_fixed(x, 4);
    os << '\n';
  };
  for (const ErrorRow& row : table.rows) line(row.label, row.values);
  line("Average", table.average);
  return os.str();
}

YieldErrorStats yield_error_stats(std::span<const double> sample_yields, double true_yield) {
  if (sample_yields.empty()) throw InsufficientDataError(0, 1);
  const double n = static_cast<double>(sample_yields.size());
  double sum = 0.0;
  for (double y : sample_yields) sum += std::abs(y - true_yield);
  const double mean = sum / n;
  double ss = 0.0;
  for (double y : sample_yields) {
    const double d = std::abs(y - true_yield) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / n)};
}

namespace {

std::map<std::string, std::size_t> header_columns(std::string_view line, std::initializer_list<const char*> required,
                                                  std::string_view what) {
  std::map<std::string, std::size_t> cols;
  const auto fields = split(line, ',');
  for (std::size_t i = 0; i < fields.size(); ++i) cols[to_lower(trim(fields[i]))] = i;
  for (const char* name : required) {
    if (!cols.contains(name)) throw FormatError(std::string(what) + " lacks a '" + name + "' column");
  }
  return cols;
}

}  // namespace

std::vector<YieldRecord> parse_yield_csv(std::string_view text) {
  std::vector<YieldRecord> out;
  std::map<std::string, std::size_t> cols;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (cols.empty()) {
      cols = header_columns(line, {"member", "crop", "slot", "yield_kg_ha"}, "yield file");
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() < cols.size()) throw FormatError("short yield row (line " + std::to_string(line_no) + ")");
    out.push_back({static_cast<std::size_t>(parse_integer(f[cols["member"]], "member")),
                   std::string(trim(f[cols["crop"]])), std::string(trim(f[cols["slot"]])),
                   parse_double(f[cols["yield_kg_ha"]], "yield_kg_ha")});
  }
  if (cols.empty()) throw FormatError("yield file has no header");
  return out;
}

std::map<std::pair<std::string, std::string>, double> parse_true_yield_csv(std::string_view text) {
  std::map<std::pair<std::string, std::string>, double> out;
  std::map<std::string, std::size_t> cols;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (cols.empty()) {
      cols = header_columns(line, {"crop", "slot", "yield_kg_ha"}, "true yield file");
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() < cols.size()) throw FormatError("short true-yield row (line " + std::to_string(line_no) + ")");
    out[{std::string(trim(f[cols["crop"]])), std::string(trim(f[cols["slot"]]))}] =
        parse_double(f[cols["yield_kg_ha"]], "yield_kg_ha");
  }
  if (cols.empty()) throw FormatError("true yield file has no header");
  return out;
}

std::map<std::pair<std::string, std::string>, YieldErrorStats> yield_table(
    const std::vector<YieldRecord>& samples, const std::map<std::pair<std::string, std::string>, double>& truth) {
  std::map<std::pair<std::string, std::string>, std::vector<double>> grouped;
  for (const YieldRecord& r : samples) grouped[{r.crop, r.slot}].push_back(r.yield);
  std::map<std::pair<std::string, std::string>, YieldErrorStats> out;
  for (const auto& [key, yields] : grouped) {
    const auto it = truth.find(key);
    if (it == truth.end()) throw RangeError("no true yield for " + key.first + "/" + key.second);
    out[key] = yield_error_stats(yields, it->second);
  }
  return out;
}

Comparison compare_methods(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  if (a.size() != b.size()) throw DimensionError("compared metrics", a.size(), b.size());
  Comparison c;
  for (const auto& [key, va] : a) {
    const auto it = b.find(key);
    if (it == b.end()) throw RangeError("metric '" + key + "' missing from the second method");
    if (va < it->second) {
      ++c.a_wins;
    } else if (it->second < va) {
      ++c.b_wins;
    } else {
      ++c.ties;
    }
  }
  return c;
}

std::map<std::string, double> yield_metrics(
    const std::map<std::pair<std::string, std::string>, YieldErrorStats>& table) {
  std::map<std::string, double> out;
  for (const auto& [key, s] : table) {
    out[key.first + "/" + key.second + "/mean"] = s.mean;
    out[key.first + "/" + key.second + "/std"] = s.std;
  }
  return out;
}

std::map<std::string, double> table_metrics(const ErrorTable& table) {
  std::map<std::string, double> out;
  const std::string prefix(period_name(table.period));
  for (const ErrorRow& row : table.rows) {
    for (std::size_t c = 0; c < 4; ++c) out[prefix + "/" + row.label + "/" + std::string(kTableVariables[c])] = row.values[c];
  }
  for (std::size_t c = 0; c < 4; ++c) out[prefix + "/Average/" + std::string(kTableVariables[c])] = table.average[c];
  return out;
}

std::string format_comparison(std::string_view a_name, std::string_view b_name, const Comparison& c) {
  std::ostringstream os;
  os << a_name << " wins " << c.a_wins << '/' << c.total() << " (" << b_name << ' ' << c.b_wins << ", ties "
     << c.ties << ')';
  return os.str();
}

}  // namespace wxgen
