// SPDX-License-Identifier: Apache-2.0

#include "wxgen/autodiff/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wxgen/error.hpp"

namespace wxgen::ad {

ConvKernel::ConvKernel(KernelShape s, std::vector<double> w, std::vector<double> b)
    : shape(s), weights(std::move(w)), bias(std::move(b)) {
  if (shape.width == 0) throw DimensionError("kernel width", 1, 0);
  if (weights.size() != shape.weight_count()) {
    throw DimensionError("kernel weights", shape.weight_count(), weights.size());
  }
  if (shape.has_bias && bias.empty()) bias.assign(shape.out_channels, 0.0);
  if (shape.has_bias && bias.size() != shape.out_channels) {
    throw DimensionError("kernel bias", shape.out_channels, bias.size());
  }
  if (!shape.has_bias && !bias.empty()) throw DimensionError("kernel bias", 0, bias.size());
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(weights.begin(), weights.end(), finite) || !std::all_of(bias.begin(), bias.end(), finite)) {
    throw DomainError("kernel contains non-finite values");
  }
}

std::size_t ParameterStore::add(std::string name, KernelShape shape) {
  if (shape.width == 0) throw DimensionError("kernel width", 1, 0);
  if (find(name)) throw Error("duplicate kernel name '" + name + "'");
  entries_.push_back({std::move(name), shape, values_.size()});
  values_.resize(values_.size() + shape.size(), 0.0);
  return entries_.size() - 1;
}

std::optional<std::size_t> ParameterStore::find(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  return std::nullopt;
}

KernelView ParameterStore::kernel(std::size_t id) const {
  const Entry& e = entries_.at(id);
  std::span<const double> all(values_.data() + e.offset, e.shape.size());
  return {e.shape, all.first(e.shape.weight_count()), all.subspan(e.shape.weight_count())};
}

std::span<double> ParameterStore::kernel_values(std::size_t id) {
  const Entry& e = entries_.at(id);
  return {values_.data() + e.offset, e.shape.size()};
}

}  // namespace wxgen::ad
