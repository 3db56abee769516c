// SPDX-License-Identifier: Apache-2.0

#include "wxgen/model/network.hpp"

#include <cmath>
#include <random>
#include <string>

#include "wxgen/error.hpp"

namespace wxgen {

WeatherNet::WeatherNet(ArchitectureSpec spec, StandardizationStats stats)
    : spec_(std::move(spec)), stats_(stats) {
  spec_.validate();
  const auto& ch = spec_.channels;
  for (std::size_t v = 0; v < 4; ++v) {
    masked_ids_[v] = params_.add("masked." + std::string(kModelVariableNames[v]), {ch.masked_out, 4, 2, false});
  }
  std::size_t in = ch.masked_out;
  for (std::size_t k = 0; k < ch.dilated_out.size(); ++k) {
    dilated_ids_.push_back(params_.add("dilated." + std::to_string(k + 1), {ch.dilated_out[k], in, spec_.base_filter, true}));
    in = ch.dilated_out[k];
  }
  for (std::size_t k = 0; k < ch.pointwise_out.size(); ++k) {
    pointwise_ids_.push_back(params_.add("pointwise." + std::to_string(k + 1), {ch.pointwise_out[k], in, 1, true}));
    in = ch.pointwise_out[k];
  }
}

WeatherNet WeatherNet::build(ArchitectureSpec spec, StandardizationStats stats, std::uint64_t seed) {
  WeatherNet net(std::move(spec), stats);
  Rng rng(seed);
  for (std::size_t id = 0; id < net.params_.kernel_count(); ++id) {
    const auto shape = net.params_.entry(id).shape;
    const double bound = 1.0 / std::sqrt(static_cast<double>(shape.in_channels * shape.width));
    std::uniform_real_distribution<double> uniform(-bound, bound);
    auto values = net.params_.kernel_values(id);
    for (std::size_t j = 0; j < shape.weight_count(); ++j) values[j] = uniform(rng);
  }
  return net;
}

ad::SequenceGrid WeatherNet::window_grid(std::span<const DayVector> standardized_days) {
  ad::SequenceGrid grid(4, standardized_days.size());
  for (std::size_t t = 0; t < standardized_days.size(); ++t) {
    for (std::size_t v = 0; v < 4; ++v) grid(v, t) = standardized_days[t][v];
  }
  return grid;
}

void WeatherNet::check_window(const ad::SequenceGrid& window) const {
  if (window.channels() != 4) throw DimensionError("window channels", 4, window.channels());
  if (window.length() != spec_.window) throw DimensionError("window length (T days)", spec_.window, window.length());
}

ad::SequenceGrid WeatherNet::stream(const ad::SequenceGrid& padded, std::size_t v) const {
  ad::SequenceGrid h = ad::crop_left(ad::masked_day_conv(padded, params_.kernel(masked_ids_[v]), kHeadMasks[v]), 1);
  for (std::size_t k = 0; k < dilated_ids_.size(); ++k) {
    h = ad::activation(ad::dilated_conv(h, params_.kernel(dilated_ids_[k]), spec_.dilation(k)), ad::Activation::tanh());
  }
  for (std::size_t k = 0; k < pointwise_ids_.size(); ++k) {
    h = ad::pointwise_conv(h, params_.kernel(pointwise_ids_[k]));
    if (k + 1 < pointwise_ids_.size()) h = ad::activation(h, ad::Activation::relu());
  }
  return h;
}

ad::SequenceGrid WeatherNet::raw_heads(const ad::SequenceGrid& window) const {
  check_window(window);
  const ad::SequenceGrid padded = ad::pad_left(window, spec_.padding());
  ad::SequenceGrid out(8, spec_.horizon);
  for (std::size_t v = 0; v < 4; ++v) {
    const ad::SequenceGrid h = stream(padded, v);
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t t = 0; t < spec_.horizon; ++t) out(2 * v + r, t) = h(r, t);
    }
  }
  return out;
}

std::vector<DayDistribution> WeatherNet::forward(const ad::SequenceGrid& window) const {
  const ad::SequenceGrid raw = raw_heads(window);
  std::vector<DayDistribution> out;
  out.reserve(spec_.horizon);
  for (std::size_t t = 0; t < spec_.horizon; ++t) {
    HeadVector h{};
    for (std::size_t j = 0; j < kHeadParams; ++j) h[j] = raw(j, t);
    out.push_back(head_activation(h, spec_.head_offset));
  }
  return out;
}

std::array<double, 2> WeatherNet::raw_head_at(const ad::SequenceGrid& window, Variable var,
                                              std::size_t horizon_index) const {
  check_window(window);
  if (horizon_index >= spec_.horizon) throw RangeError("horizon index " + std::to_string(horizon_index) + " out of range");
  const std::size_t v = static_cast<std::size_t>(var);
  const std::size_t pad = spec_.padding();
  const std::size_t l = spec_.base_filter;

  // Padded columns k..k+T-1 feed masked features k..k+T-2 after the crop.
  ad::SequenceGrid slice(4, spec_.window);
  for (std::size_t j = 0; j < spec_.window; ++j) {
    const std::size_t p = horizon_index + j;
    if (p < pad) continue;
    for (std::size_t c = 0; c < 4; ++c) slice(c, j) = window(c, p - pad);
  }
  ad::SequenceGrid h = ad::crop_left(ad::masked_day_conv(slice, params_.kernel(masked_ids_[v]), kHeadMasks[v]), 1);
  // Only every l^k-th position of layer k is on the cone, so each dilated
  // layer becomes a stride-l, dilation-1 convolution on the compacted grid.
  for (std::size_t k = 0; k < dilated_ids_.size(); ++k) {
    h = ad::activation(ad::dilated_conv(h, params_.kernel(dilated_ids_[k]), 1, l), ad::Activation::tanh());
  }
  for (std::size_t k = 0; k < pointwise_ids_.size(); ++k) {
    h = ad::pointwise_conv(h, params_.kernel(pointwise_ids_[k]));
    if (k + 1 < pointwise_ids_.size()) h = ad::activation(h, ad::Activation::relu());
  }
  return {h(0, 0), h(1, 0)};
}

ad::Var WeatherNet::record_stream(ad::Tape& tape, ad::Var padded, std::size_t v) const {
  ad::Var h = tape.crop_left(tape.masked_day_conv(padded, masked_ids_[v], kHeadMasks[v]), 1);
  for (std::size_t k = 0; k < dilated_ids_.size(); ++k) {
    h = tape.activation(tape.dilated_conv(h, dilated_ids_[k], spec_.dilation(k)), ad::Activation::tanh());
  }
  for (std::size_t k = 0; k < pointwise_ids_.size(); ++k) {
    h = tape.pointwise_conv(h, pointwise_ids_[k]);
    if (k + 1 < pointwise_ids_.size()) h = tape.activation(h, ad::Activation::relu());
  }
  return h;
}

ad::Var WeatherNet::record_loss(ad::Tape& tape, const ad::SequenceGrid& window,
                                std::span<const DayVector> targets) const {
  check_window(window);
  if (targets.size() != spec_.horizon) throw DimensionError("target days", spec_.horizon, targets.size());
  const ad::Var input = tape.input(window);
  const ad::Var padded = tape.pad_left(input, spec_.padding());
  std::array<ad::Var, 4> heads{};
  for (std::size_t v = 0; v < 4; ++v) heads[v] = record_stream(tape, padded, v);

  const std::size_t horizon = spec_.horizon;
  // d loss / d raw head, filled while computing the value.
  ad::SequenceGrid d_raw(8, horizon);
  double total = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    HeadVector raw{};
    for (std::size_t v = 0; v < 4; ++v) {
      raw[2 * v] = tape.value(heads[v])(0, t);
      raw[2 * v + 1] = tape.value(heads[v])(1, t);
    }
    const DayDistribution dist = head_activation(raw, spec_.head_offset);
    const DayNllResult nll = day_nll_with_gradient(targets[t], dist);
    const HeadVector dact = head_activation_derivative(raw);
    total += nll.value;
    for (std::size_t j = 0; j < kHeadParams; ++j) d_raw(j, t) = nll.gradient[j] * dact[j];
  }
  ad::SequenceGrid value(1, 1, total);
  return tape.record(std::move(value), [heads, d_raw](ad::Tape& tp, const ad::SequenceGrid& gy) {
    const double scale = gy(0, 0);
    for (std::size_t v = 0; v < 4; ++v) {
      ad::SequenceGrid& g = tp.grad_mut(heads[v]);
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t t = 0; t < g.length(); ++t) g(r, t) += scale * d_raw(2 * v + r, t);
      }
    }
  });
}

}  // namespace wxgen
