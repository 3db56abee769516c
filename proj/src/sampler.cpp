// SPDX-License-Identifier: Apache-2.0

#include "wxgen/sampler.hpp"

#include <algorithm>
#include <thread>

#include "wxgen/error.hpp"

namespace wxgen {

double default_draw(std::size_t, Variable v, const DayDistribution& dist, Rng& rng) {
  switch (v) {
    case Variable::radn:
      return sample_gamma(dist.radn, rng);
    case Variable::mint:
      return sample_normal(dist.mint, rng);
    case Variable::diff:
      return sample_gamma(dist.diff, rng);
    case Variable::rain:
      return sample_gamma(dist.rain, rng);
  }
  throw DomainError("unknown variable");
}

std::vector<DayVector> generate_member(const WeatherNet& net, std::span<const DayVector> conditioning_tail,
                                       double zero_floor, Rng& rng, const DrawFn& draw) {
  const ArchitectureSpec& spec = net.spec();
  if (conditioning_tail.size() != spec.conditioning) {
    throw InsufficientDataError(conditioning_tail.size(), spec.conditioning);
  }
  const StandardizationStats& stats = net.stats();
  ad::SequenceGrid window(4, spec.window);
  for (std::size_t t = 0; t < spec.conditioning; ++t) {
    const DayVector z = stats.apply(conditioning_tail[t]);
    for (std::size_t v = 0; v < 4; ++v) window(v, t) = z[v];
  }
  std::vector<DayVector> out(spec.horizon);
  for (std::size_t k = 0; k < spec.horizon; ++k) {
    const std::size_t column = spec.conditioning + k;
    for (std::size_t v = 0; v < 4; ++v) {
      const auto var = static_cast<Variable>(v);
      const auto raw = net.raw_head_at(window, var, k);
      HeadVector h{};
      h[2 * v] = raw[0];
      h[2 * v + 1] = raw[1];
      const DayDistribution dist = head_activation(h, spec.head_offset);
      double x = draw(k, var, dist, rng);
      if (var != Variable::mint) x = std::max(x, zero_floor);
      out[k][v] = x;
      window(v, column) = (x - stats.mean[v]) / stats.std[v];
    }
  }
  return out;
}

Ensemble generate(const WeatherNet& net, const GenerationRequest& request) {
  const ArchitectureSpec& spec = net.spec();
  if (request.horizon != spec.horizon) {
    throw RepurposeError("this network was built for a " + std::to_string(spec.horizon) +
                         "-day horizon; generating " + std::to_string(request.horizon) +
                         " days would reuse it outside the setting it was trained for. Train a network for the new "
                         "horizon instead.");
  }
  const TransformedSeries& cond = request.conditioning;
  if (cond.size() < spec.conditioning) throw InsufficientDataError(cond.size(), spec.conditioning);
  const Date next_day = cond.date_at(cond.size());
  if (request.start_date && *request.start_date != next_day) {
    throw RangeError("generation must start the day after the conditioning ends (" + format_date(next_day) +
                     "), not " + format_date(*request.start_date));
  }
  if (request.n_samples == 0) throw DimensionError("ensemble members", 1, 0);
  const std::span<const DayVector> tail(cond.days.data() + (cond.size() - spec.conditioning), spec.conditioning);

  Ensemble ensemble;
  ensemble.start = next_day;
  ensemble.horizon = spec.horizon;
  ensemble.provenance.method = "network";
  ensemble.provenance.seed = request.master_seed;
  ensemble.provenance.conditioning_first = cond.date_at(cond.size() - spec.conditioning);
  ensemble.provenance.conditioning_last = cond.date_at(cond.size() - 1);
  ensemble.provenance.checkpoint_id = request.checkpoint_id;
  ensemble.members.resize(request.n_samples);

  auto run_member = [&](std::size_t k) {
    Rng rng = make_stream(request.master_seed, k);
    const std::vector<DayVector> path = generate_member(net, tail, cond.zero_floor, rng);
    std::vector<RawDay>& member = ensemble.members[k];
    member.reserve(path.size());
    for (const DayVector& d : path) member.push_back(from_model_space(d));
  };
  const std::size_t lanes = std::clamp<std::size_t>(request.threads, 1, request.n_samples);
  if (lanes == 1) {
    for (std::size_t k = 0; k < request.n_samples; ++k) run_member(k);
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      workers.emplace_back([&, lane] {
        for (std::size_t k = lane; k < request.n_samples; k += lanes) run_member(k);
      });
    }
  }
  return ensemble;
}

}  // namespace wxgen
