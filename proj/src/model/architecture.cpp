// SPDX-License-Identifier: Apache-2.0

#include "wxgen/model/architecture.hpp"

#include <limits>
#include <sstream>

#include "wxgen/error.hpp"

namespace wxgen {

namespace {

// l^m, or 0 on overflow.
std::size_t checked_power(std::size_t base, std::size_t exponent) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (result > std::numeric_limits<std::size_t>::max() / base) return 0;
    result *= base;
  }
  return result;
}

}  // namespace

ChannelLadder ChannelLadder::from_flat(const std::vector<std::size_t>& flat, std::size_t dilated_layers) {
  if (flat.size() < dilated_layers + 2) {
    throw DimensionError("channel ladder entries", dilated_layers + 2, flat.size());
  }
  ChannelLadder ladder;
  ladder.masked_out = flat[0];
  ladder.dilated_out.assign(flat.begin() + 1, flat.begin() + 1 + static_cast<std::ptrdiff_t>(dilated_layers));
  ladder.pointwise_out.assign(flat.begin() + 1 + static_cast<std::ptrdiff_t>(dilated_layers), flat.end());
  return ladder;
}

std::vector<std::size_t> ChannelLadder::flat() const {
  std::vector<std::size_t> out{masked_out};
  out.insert(out.end(), dilated_out.begin(), dilated_out.end());
  out.insert(out.end(), pointwise_out.begin(), pointwise_out.end());
  return out;
}

std::size_t ArchitectureSpec::dilation(std::size_t layer) const { return checked_power(base_filter, layer); }

void ArchitectureSpec::validate() const {
  if (base_filter < 2) throw PlanningError("base filter length l must be at least 2", 0);
  if (dilated_layers < 1) throw PlanningError("at least one dilated layer is required", 0);
  const std::size_t field = checked_power(base_filter, dilated_layers);
  if (field == 0 || window != field + 1) {
    throw PlanningError("window length T must equal l^m + 1", static_cast<long long>(conditioning));
  }
  if (conditioning < 1 || conditioning >= window || horizon != window - conditioning) {
    throw PlanningError("conditioning length must satisfy 1 <= t0 < T and horizon = T - t0",
                        static_cast<long long>(conditioning));
  }
  if (channels.dilated_out.size() != dilated_layers) {
    throw DimensionError("dilated channel entries", dilated_layers, channels.dilated_out.size());
  }
  if (channels.pointwise_out.empty()) throw DimensionError("pointwise layers", 1, 0);
  if (channels.pointwise_out.back() != 2) throw DimensionError("final pointwise channels", 2, channels.pointwise_out.back());
  if (channels.masked_out == 0) throw DimensionError("masked output channels", 1, 0);
  for (std::size_t c : channels.dilated_out) {
    if (c == 0) throw DimensionError("dilated output channels", 1, 0);
  }
  for (std::size_t c : channels.pointwise_out) {
    if (c == 0) throw DimensionError("pointwise output channels", 1, 0);
  }
  if (!(head_offset > 0.0)) throw PlanningError("head offset epsilon must be positive", static_cast<long long>(conditioning));
}

ArchitectureSpec plan_architecture(std::size_t horizon, std::size_t base_filter, std::size_t dilated_layers,
                                   ConditioningRange range, ChannelLadder channels, double head_offset) {
  if (base_filter < 2) throw PlanningError("base filter length l must be at least 2", 0);
  if (dilated_layers < 1) throw PlanningError("at least one dilated layer is required", 0);
  if (horizon < 1) throw PlanningError("horizon must be at least one day", 0);
  const std::size_t field = checked_power(base_filter, dilated_layers);
  if (field == 0) throw PlanningError("receptive field l^m overflows", 0);
  const long long window = static_cast<long long>(field) + 1;
  const long long t0 = window - static_cast<long long>(horizon);
  if (t0 < 1) {
    std::ostringstream os;
    os << "horizon " << horizon << " needs l^m >= horizon, but l^m = " << field;
    throw PlanningError(os.str(), t0);
  }
  if (static_cast<std::size_t>(t0) < range.min || static_cast<std::size_t>(t0) > range.max) {
    std::ostringstream os;
    os << "conditioning length outside acceptable range [" << range.min << ", " << range.max << "]";
    throw PlanningError(os.str(), t0);
  }
  ArchitectureSpec spec;
  spec.base_filter = base_filter;
  spec.dilated_layers = dilated_layers;
  spec.channels = std::move(channels);
  spec.window = static_cast<std::size_t>(window);
  spec.conditioning = static_cast<std::size_t>(t0);
  spec.horizon = horizon;
  spec.head_offset = head_offset;
  spec.validate();
  return spec;
}

std::size_t param_count(const ArchitectureSpec& spec) {
  const auto& ch = spec.channels;
  std::size_t total = 4 * (4 * 2 * ch.masked_out);
  std::size_t in = ch.masked_out;
  for (std::size_t out : ch.dilated_out) {
    total += in * out * spec.base_filter + out;
    in = out;
  }
  for (std::size_t out : ch.pointwise_out) {
    total += in * out + out;
    in = out;
  }
  return total;
}

std::vector<std::string> describe_layers(const ArchitectureSpec& spec) {
  std::vector<std::string> lines;
  const auto& ch = spec.channels;
  // Per-stream sequence lengths through the network.
  std::size_t len = spec.window + spec.padding();
  std::ostringstream os;
  os << "input    4 x " << spec.window << " days, left-padded by " << spec.padding() << " -> 4 x " << len;
  lines.push_back(os.str());
  os.str("");
  len -= 1;
  os << "masked   4 -> " << ch.masked_out << " width 2 (x4 heads, no bias) -> " << ch.masked_out << " x " << len;
  lines.push_back(os.str());
  std::size_t in = ch.masked_out;
  for (std::size_t k = 0; k < ch.dilated_out.size(); ++k) {
    const std::size_t d = spec.dilation(k);
    len -= (spec.base_filter - 1) * d;
    os.str("");
    os << "dilated" << k + 1 << " " << in << " -> " << ch.dilated_out[k] << " width " << spec.base_filter
       << " dilation " << d << " tanh -> " << ch.dilated_out[k] << " x " << len;
    lines.push_back(os.str());
    in = ch.dilated_out[k];
  }
  for (std::size_t k = 0; k < ch.pointwise_out.size(); ++k) {
    os.str("");
    const bool last = k + 1 == ch.pointwise_out.size();
    os << "pointwise" << k + 1 << " " << in << " -> " << ch.pointwise_out[k] << (last ? " head" : " relu") << " -> "
       << ch.pointwise_out[k] << " x " << len;
    lines.push_back(os.str());
    in = ch.pointwise_out[k];
  }
  return lines;
}

}  // namespace wxgen
