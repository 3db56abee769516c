// SPDX-License-Identifier: Apache-2.0
//
// Convolution kernels and the flat parameter store.
//
// Flattening order (fixed; Adam moments and checkpoints rely on it):
//   for each kernel in insertion order:
//     weights[out][in][width]   (width fastest)
//     bias[out]                 (only when the kernel has a bias)

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wxgen::ad {

struct KernelShape {
  std::size_t out_channels = 0;
  std::size_t in_channels = 0;
  std::size_t width = 1;
  bool has_bias = true;

  std::size_t weight_count() const { return out_channels * in_channels * width; }
  std::size_t size() const { return weight_count() + (has_bias ? out_channels : 0); }

  friend bool operator==(const KernelShape&, const KernelShape&) = default;
};

/// Read-only view of one kernel's weights and bias.
struct KernelView {
  KernelShape shape;
  std::span<const double> weights;
  std::span<const double> bias;  // empty when !shape.has_bias

  double weight(std::size_t out, std::size_t in, std::size_t k) const {
    return weights[(out * shape.in_channels + in) * shape.width + k];
  }
  double bias_at(std::size_t out) const { return bias.empty() ? 0.0 : bias[out]; }
};

/// Owning kernel, used where a kernel lives outside a ParameterStore.
struct ConvKernel {
  KernelShape shape;
  std::vector<double> weights;
  std::vector<double> bias;

  ConvKernel() = default;
  ConvKernel(KernelShape s, std::vector<double> w, std::vector<double> b = {});

  KernelView view() const { return {shape, weights, bias}; }
};

class ParameterStore {
 public:
  struct Entry {
    std::string name;
    KernelShape shape;
    std::size_t offset = 0;
  };

  /// Appends a zero-initialised kernel and returns its id.
  std::size_t add(std::string name, KernelShape shape);

  std::size_t kernel_count() const { return entries_.size(); }
  const Entry& entry(std::size_t id) const { return entries_.at(id); }
  std::optional<std::size_t> find(std::string_view name) const;

  KernelView kernel(std::size_t id) const;
  std::span<double> kernel_values(std::size_t id);

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::size_t total_count() const { return values_.size(); }

 private:
  std::vector<Entry> entries_;
  std::vector<double> values_;
};

}  // namespace wxgen::ad
