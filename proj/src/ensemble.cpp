// SPDX-License-Identifier: Apache-2.0

#include "wxgen/ensemble.hpp"

#include <sstream>

#include "wxgen/error.hpp"
#include "wxgen/text.hpp"

namespace wxgen {

WeatherSeries Ensemble::member_series(std::size_t k, Location location) const {
  if (k >= members.size()) throw RangeError("member " + std::to_string(k) + " out of range");
  std::vector<DailyRecord> records;
  records.reserve(members[k].size());
  for (std::size_t t = 0; t < members[k].size(); ++t) {
    const RawDay& d = members[k][t];
    records.push_back({date_at(t), d.radn, d.mint, d.maxt, d.rain});
  }
  return WeatherSeries(std::move(records), std::move(location));
}

void Ensemble::validate() const {
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k].size() != horizon) throw DimensionError("member " + std::to_string(k) + " days", horizon, members[k].size());
  }
}

Ensemble concatenate(std::span<const Ensemble> blocks) {
  if (blocks.empty()) throw DimensionError("ensemble blocks", 1, 0);
  Ensemble out = blocks.front();
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    const Ensemble& next = blocks[b];
    if (next.size() != out.size()) throw DimensionError("members in block " + std::to_string(b), out.size(), next.size());
    if (next.start != add_days(out.last_date(), 1)) {
      throw RangeError("block " + std::to_string(b) + " starts " + format_date(next.start) + ", expected " +
                       format_date(add_days(out.last_date(), 1)));
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
      out.members[k].insert(out.members[k].end(), next.members[k].begin(), next.members[k].end());
    }
    out.horizon += next.horizon;
  }
  return out;
}

std::string format_ensemble_csv(const Ensemble& e) {
  e.validate();
  std::ostringstream os;
  const Provenance& p = e.provenance;
  os << "# method=" << p.method << '\n';
  os << "# seed=" << p.seed << '\n';
  os << "# start=" << format_date(e.start) << '\n';
  os << "# horizon=" << e.horizon << '\n';
  os << "# members=" << e.size() << '\n';
  if (p.conditioning_first && p.conditioning_last) {
    os << "# conditioning=" << format_date(*p.conditioning_first) << ".." << format_date(*p.conditioning_last) << '\n';
  }
  if (!p.checkpoint_id.empty()) os << "# checkpoint=" << p.checkpoint_id << '\n';
  for (std::size_t k = 0; k < p.member_sources.size(); ++k) {
    os << "# source=" << k << ',' << format_date(p.member_sources[k]) << '\n';
  }
  os << "member,date,radn,mint,maxt,rain\n";
  for (std::size_t k = 0; k < e.size(); ++k) {
    for (std::size_t t = 0; t < e.horizon; ++t) {
      const RawDay& d = e.members[k][t];
      os << k << ',' << format_date(e.date_at(t)) << ',' << format_real(d.radn) << ',' << format_real(d.mint) << ','
         << format_real(d.maxt) << ',' << format_real(d.rain) << '\n';
    }
  }
  return os.str();
}

Ensemble parse_ensemble_csv(std::string_view text) {
  Ensemble e;
  std::optional<Date> start;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> members;
  bool have_header = false;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string_view key = trim(body.substr(0, eq));
      const std::string_view value = trim(body.substr(eq + 1));
      if (key == "method") {
        e.provenance.method = std::string(value);
      } else if (key == "seed") {
        e.provenance.seed = static_cast<std::uint64_t>(parse_integer(value, "seed"));
      } else if (key == "start") {
        start = parse_date(value);
      } else if (key == "horizon") {
        horizon = static_cast<std::size_t>(parse_integer(value, "horizon"));
      } else if (key == "members") {
        members = static_cast<std::size_t>(parse_integer(value, "members"));
      } else if (key == "conditioning") {
        const std::size_t dots = value.find("..");
        if (dots == std::string_view::npos) throw FormatError("conditioning range needs FIRST..LAST" + where);
        e.provenance.conditioning_first = parse_date(value.substr(0, dots));
        e.provenance.conditioning_last = parse_date(value.substr(dots + 2));
      } else if (key == "checkpoint") {
        e.provenance.checkpoint_id = std::string(value);
      } else if (key == "source") {
        const auto parts = split(value, ',');
        if (parts.size() != 2) throw FormatError("source line needs member,date" + where);
        const auto k = static_cast<std::size_t>(parse_integer(parts[0], "source member"));
        if (k != e.provenance.member_sources.size()) throw FormatError("source lines out of order" + where);
        e.provenance.member_sources.push_back(parse_date(parts[1]));
      }
      continue;
    }
    if (!have_header) {
      if (line != "member,date,radn,mint,maxt,rain") throw FormatError("unexpected ensemble header" + where);
      if (!start || !horizon || !members) throw FormatError("ensemble file lacks start/horizon/members lines");
      e.start = *start;
      e.horizon = *horizon;
      e.members.assign(*members, {});
      have_header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 6) throw FormatError("expected 6 fields" + where);
    const auto k = static_cast<std::size_t>(parse_integer(f[0], "member"));
    if (k >= e.members.size()) throw FormatError("member index " + std::to_string(k) + " out of range" + where);
    const std::size_t t = e.members[k].size();
    if (t >= e.horizon || parse_date(f[1]) != e.date_at(t)) throw FormatError("unexpected date" + where);
    e.members[k].push_back({parse_double(f[2], "radn"), parse_double(f[3], "mint"), parse_double(f[4], "maxt"),
                            parse_double(f[5], "rain")});
  }
  if (!have_header) throw FormatError("ensemble file has no header");
  e.validate();
  return e;
}

void write_ensemble(const std::string& path, const Ensemble& ensemble) {
  write_file(path, format_ensemble_csv(ensemble));
}

Ensemble read_ensemble(const std::string& path) { return parse_ensemble_csv(read_file(path)); }

}  // namespace wxgen
