// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "synthetic.hpp"
#include "wxgen/error.hpp"
#include "wxgen/met_file.hpp"
#include "wxgen/sampler.hpp"
#include "wxgen/text.hpp"

using namespace wxgen;

namespace {

struct Setup {
  TransformedSeries series;
  StandardizationStats stats;
  ArchitectureSpec spec;
};

Setup setup() {
  testing::SyntheticConfig cfg;
  cfg.days = 200;
  Setup s;
  s.series = to_model_space(testing::synthetic_series(cfg));
  s.stats = fit_standardization(s.series);
  s.spec = testing::toy_spec(14);
  return s;
}

GenerationRequest request_for(const Setup& s, std::size_t n) {
  GenerationRequest r;
  r.conditioning = s.series;
  r.horizon = s.spec.horizon;
  r.n_samples = n;
  r.master_seed = 11;
  return r;
}

Date ymd(int y, unsigned m, unsigned d) { return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}; }

}  // namespace

TEST_CASE("generated members respect the physical constraints") {
  const Setup s = setup();
  const WeatherNet net = WeatherNet::build(s.spec, s.stats, 2);
  const Ensemble e = generate(net, request_for(s, 40));
  REQUIRE(e.size() == 40);
  CHECK(e.horizon == s.spec.horizon);
  CHECK(e.start == s.series.date_at(s.series.size()));
  CHECK(e.provenance.method == "network");
  CHECK(*e.provenance.conditioning_last == s.series.date_at(s.series.size() - 1));
  for (const auto& member : e.members) {
    REQUIRE(member.size() == s.spec.horizon);
    for (const RawDay& d : member) {
      CHECK(d.radn >= kDefaultZeroFloor);
      CHECK(d.rain >= kDefaultZeroFloor);
      CHECK(d.maxt - d.mint >= kDefaultZeroFloor * (1.0 - 1e-9));
      CHECK(std::isfinite(d.mint));
    }
  }
}

TEST_CASE("generation is deterministic and member-local") {
  const Setup s = setup();
  const WeatherNet net = WeatherNet::build(s.spec, s.stats, 2);
  const Ensemble a = generate(net, request_for(s, 10));
  const Ensemble b = generate(net, request_for(s, 10));
  CHECK(a == b);

  // Fewer members leave the remaining ones untouched.
  const Ensemble fewer = generate(net, request_for(s, 9));
  for (std::size_t k = 0; k < 9; ++k) CHECK(fewer.members[k] == a.members[k]);

  GenerationRequest other = request_for(s, 10);
  other.master_seed = 12;
  CHECK(generate(net, other).members != a.members);

  GenerationRequest threaded = request_for(s, 10);
  threaded.threads = 4;
  CHECK(generate(net, threaded) == a);
}

TEST_CASE("a zero network samples mint from N(0, softplus(0) + eps)") {
  const Setup s = setup();
  const WeatherNet zero(s.spec, s.stats);
  const std::size_t members = 1000;
  const Ensemble e = generate(zero, request_for(s, members));
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& m : e.members) {
    for (const RawDay& d : m) {
      sum += d.mint;
      ++n;
    }
  }
  REQUIRE(n >= 10000);
  const double sigma = std::log(2.0) + 1e-3;
  CHECK(std::abs(sum / static_cast<double>(n)) <= 3.0 * sigma / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("heads see only what their mask admits") {
  // With a zero network every head is the same constant distribution, so
  // altering the rain draws must leave every other variable unchanged.
  const Setup s = setup();
  const WeatherNet zero(s.spec, s.stats);
  const std::span<const DayVector> tail(s.series.days.data() + s.series.size() - s.spec.conditioning,
                                        s.spec.conditioning);
  Rng r1(3);
  Rng r2(3);
  const auto base = generate_member(zero, tail, kDefaultZeroFloor, r1);
  const DrawFn wetter = [](std::size_t day, Variable v, const DayDistribution& d, Rng& rng) {
    const double x = default_draw(day, v, d, rng);
    return v == Variable::rain ? x + 10.0 : x;
  };
  const auto changed = generate_member(zero, tail, kDefaultZeroFloor, r2, wetter);
  for (std::size_t k = 0; k < base.size(); ++k) {
    CHECK(changed[k][0] == base[k][0]);
    CHECK(changed[k][1] == base[k][1]);
    CHECK(changed[k][2] == base[k][2]);
    CHECK(changed[k][3] != base[k][3]);
  }

  // With a trained-looking random network, a radn change on day k must not
  // alter radn on day k (nothing same-day feeds the radn head).
  const WeatherNet net = WeatherNet::build(s.spec, s.stats, 9);
  Rng r3(5);
  Rng r4(5);
  const auto plain = generate_member(net, tail, kDefaultZeroFloor, r3);
  const DrawFn bump_mint = [](std::size_t day, Variable v, const DayDistribution& d, Rng& rng) {
    const double x = default_draw(day, v, d, rng);
    return v == Variable::mint && day == 0 ? x + 5.0 : x;
  };
  const auto bumped = generate_member(net, tail, kDefaultZeroFloor, r4, bump_mint);
  CHECK(bumped[0][0] == plain[0][0]);
  CHECK(bumped[0][1] != plain[0][1]);
  CHECK(bumped[0][2] != plain[0][2]);
}

TEST_CASE("generation errors") {
  const Setup s = setup();
  const WeatherNet net = WeatherNet::build(s.spec, s.stats, 2);
  GenerationRequest longer = request_for(s, 2);
  longer.horizon = s.spec.horizon + 1;
  CHECK_THROWS_AS(generate(net, longer), RepurposeError);

  GenerationRequest short_cond = request_for(s, 2);
  short_cond.conditioning = s.series.slice(0, s.spec.conditioning - 1);
  CHECK_THROWS_AS(generate(net, short_cond), InsufficientDataError);

  GenerationRequest wrong_start = request_for(s, 2);
  wrong_start.start_date = s.series.date_at(s.series.size() + 1);
  CHECK_THROWS_AS(generate(net, wrong_start), RangeError);

  GenerationRequest right_start = request_for(s, 2);
  right_start.start_date = s.series.date_at(s.series.size());
  CHECK_NOTHROW(generate(net, right_start));

  Rng rng(1);
  CHECK_THROWS_AS(generate_member(net, std::span<const DayVector>(s.series.days.data(), 3), kDefaultZeroFloor, rng),
                  InsufficientDataError);
}

TEST_CASE("ensemble text round trip and concatenation") {
  const Setup s = setup();
  const WeatherNet net = WeatherNet::build(s.spec, s.stats, 2);
  const Ensemble e = generate(net, request_for(s, 3));
  CHECK(parse_ensemble_csv(format_ensemble_csv(e)) == e);

  Ensemble next = e;
  next.start = add_days(e.start, static_cast<long long>(e.horizon));
  const std::vector<Ensemble> blocks{e, next};
  const Ensemble joined = concatenate(blocks);
  CHECK(joined.horizon == 2 * e.horizon);
  CHECK(joined.members[1][e.horizon] == e.members[1][0]);

  Ensemble gap = next;
  gap.start = add_days(next.start, 1);
  const std::vector<Ensemble> bad{e, gap};
  CHECK_THROWS(concatenate(bad));
}

TEST_CASE("met files") {
  const WeatherSeries three({{ymd(2021, 3, 19), 18.2, 9.1, 22.4, 0.0},
                             {ymd(2021, 3, 20), 17.5, 10.0, 20.0, 3.25},
                             {ymd(2021, 3, 21), 20.0, 8.0, 25.5, 0.0}},
                            {"Robe", -37.16});
  const std::string text = format_met(three);
  CHECK(text.rfind("[weather.met.weather]", 0) == 0);
  CHECK(text.find("latitude = -37.16 (DECIMAL DEGREES)") != std::string::npos);
  CHECK(text.find("2021 78 18.20 22.40 9.10 0.00") != std::string::npos);
  const WeatherSeries parsed = parse_met(text);
  REQUIRE(parsed.size() == 3);
  CHECK(parsed[2].date == ymd(2021, 3, 21));
  CHECK(parsed[1].rain == 3.25);
  CHECK(format_met(parsed) == text);

  // tav and amp from the monthly means of the daily average.
  const TemperatureSummary t = temperature_summary(three);
  CHECK(t.tav == doctest::Approx((15.75 + 15.0 + 16.75) / 3.0).epsilon(1e-12));
  CHECK(t.amp == 0.0);

  // Emit -> parse -> emit on generated members.
  const Setup s = setup();
  const WeatherNet net = WeatherNet::build(s.spec, s.stats, 2);
  const Ensemble e = generate(net, request_for(s, 2));
  for (std::size_t k = 0; k < e.size(); ++k) {
    const WeatherSeries member = e.member_series(k, {"synthetic", -37.16});
    const std::string once = format_met(member);
    const std::string twice = format_met(parse_met(once));
    CHECK(once == twice);
    for (const DailyRecord& d : parse_met(once).records()) CHECK(d.maxt >= d.mint);
  }

  const auto dir = std::filesystem::temp_directory_path() / "wxgen_met_test";
  std::filesystem::create_directories(dir);
  write_met((dir / "a.met").string(), three);
  CHECK(read_file((dir / "a.met").string()) == text);
  CHECK(read_met((dir / "a.met").string()).size() == 3);
  std::filesystem::remove_all(dir);

  CHECK_THROWS_AS(parse_met("year day radn maxt mint rain\n2021 1 1 1\n"), FormatError);
}
