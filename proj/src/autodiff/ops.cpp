// SPDX-License-Identifier: Apache-2.0

#include "wxgen/autodiff/ops.hpp"

#include <algorithm>
#include <cmath>

#include "wxgen/error.hpp"

namespace wxgen::ad {

DayMask make_day_mask(std::span<const int> bits) {
  if (bits.size() != kDayChannels) throw DimensionError("day mask length", kDayChannels, bits.size());
  DayMask mask{};
  for (std::size_t i = 0; i < kDayChannels; ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw DomainError("day mask entries must be 0 or 1");
    mask[i] = bits[i] == 1;
  }
  return mask;
}

double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double activate(double z, Activation a) {
  switch (a.kind) {
    case ActivationKind::identity:
      return z;
    case ActivationKind::tanh:
      return std::tanh(z);
    case ActivationKind::relu:
      return z > 0.0 ? z : 0.0;
    case ActivationKind::softplus_eps:
      return softplus(z) + a.eps;
  }
  return z;
}

double activate_derivative(double z, Activation a) {
  switch (a.kind) {
    case ActivationKind::identity:
      return 1.0;
    case ActivationKind::tanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case ActivationKind::relu:
      return z > 0.0 ? 1.0 : 0.0;
    case ActivationKind::softplus_eps:
      return sigmoid(z);
  }
  return 1.0;
}

namespace {

void check_conv_input(const SequenceGrid& input, const KernelView& kernel, std::size_t dilation) {
  if (kernel.shape.width == 0) throw DimensionError("kernel width", 1, 0);
  if (dilation == 0) throw DimensionError("dilation", 1, 0);
  if (input.channels() != kernel.shape.in_channels) {
    throw DimensionError("input channels", kernel.shape.in_channels, input.channels());
  }
  const std::size_t span = (kernel.shape.width - 1) * dilation + 1;
  if (input.length() < span) throw InsufficientLengthError(span, input.length());
}

}  // namespace

SequenceGrid dilated_conv(const SequenceGrid& input, const KernelView& kernel, std::size_t dilation,
                          std::size_t stride) {
  check_conv_input(input, kernel, dilation);
  if (stride == 0) throw DimensionError("stride", 1, 0);
  const auto& s = kernel.shape;
  const std::size_t span = (s.width - 1) * dilation + 1;
  const std::size_t out_len = (input.length() - span) / stride + 1;
  SequenceGrid out(s.out_channels, out_len);

  for (std::size_t c = 0; c < s.out_channels; ++c) {
    double* y = out.row(c).data();
    std::fill(y, y + out_len, kernel.bias_at(c));
    for (std::size_t i = 0; i < s.in_channels; ++i) {
      const double* x = input.row(i).data();
      for (std::size_t k = 0; k < s.width; ++k) {
        const double w = kernel.weight(c, i, k);
        const double* xk = x + k * dilation;
        if (stride == 1) {
          for (std::size_t t = 0; t < out_len; ++t) y[t] += w * xk[t];
        } else {
          for (std::size_t t = 0; t < out_len; ++t) y[t] += w * xk[t * stride];
        }
      }
    }
  }
  return out;
}

void dilated_conv_backward(const SequenceGrid& input, const KernelView& kernel, std::size_t dilation,
                           const SequenceGrid& grad_output, SequenceGrid* grad_input,
                           std::span<double> grad_kernel) {
  const auto& s = kernel.shape;
  const std::size_t out_len = grad_output.length();
  if (grad_kernel.size() != s.size()) throw DimensionError("kernel gradient", s.size(), grad_kernel.size());
  for (std::size_t c = 0; c < s.out_channels; ++c) {
    const double* gy = grad_output.row(c).data();
    if (s.has_bias) {
      double acc = 0.0;
      for (std::size_t t = 0; t < out_len; ++t) acc += gy[t];
      grad_kernel[s.weight_count() + c] += acc;
    }
    for (std::size_t i = 0; i < s.in_channels; ++i) {
      const double* x = input.row(i).data();
      double* gx = grad_input ? grad_input->row(i).data() : nullptr;
      for (std::size_t k = 0; k < s.width; ++k) {
        const std::size_t off = k * dilation;
        double acc = 0.0;
        for (std::size_t t = 0; t < out_len; ++t) acc += gy[t] * x[t + off];
        grad_kernel[(c * s.in_channels + i) * s.width + k] += acc;
        if (gx) {
          const double w = kernel.weight(c, i, k);
          for (std::size_t t = 0; t < out_len; ++t) gx[t + off] += w * gy[t];
        }
      }
    }
  }
}

SequenceGrid pointwise_conv(const SequenceGrid& input, const KernelView& kernel) {
  if (kernel.shape.width != 1) throw DimensionError("pointwise kernel width", 1, kernel.shape.width);
  return dilated_conv(input, kernel, 1);
}

namespace {

void check_masked(const SequenceGrid& input, const KernelView& kernel) {
  if (input.channels() != kDayChannels) throw DimensionError("input channels", kDayChannels, input.channels());
  if (kernel.shape.in_channels != kDayChannels) {
    throw DimensionError("masked kernel in_channels", kDayChannels, kernel.shape.in_channels);
  }
  if (kernel.shape.width != 2) throw DimensionError("masked kernel width", 2, kernel.shape.width);
  if (kernel.shape.has_bias) throw DimensionError("masked kernel bias", 0, kernel.shape.out_channels);
}

}  // namespace

SequenceGrid masked_day_conv(const SequenceGrid& input, const KernelView& kernel, const DayMask& mask) {
  check_masked(input, kernel);
  const std::size_t len = input.length();
  SequenceGrid out(kernel.shape.out_channels, len);
  for (std::size_t c = 0; c < kernel.shape.out_channels; ++c) {
    double* y = out.row(c).data();
    for (std::size_t i = 0; i < kDayChannels; ++i) {
      const double* x = input.row(i).data();
      const double w_prev = kernel.weight(c, i, 0);
      for (std::size_t t = 1; t < len; ++t) y[t] += w_prev * x[t - 1];
      if (mask[i]) {
        const double w_same = kernel.weight(c, i, 1);
        for (std::size_t t = 1; t < len; ++t) y[t] += w_same * x[t];
      }
    }
  }
  return out;
}

void masked_day_conv_backward(const SequenceGrid& input, const KernelView& kernel, const DayMask& mask,
                              const SequenceGrid& grad_output, SequenceGrid* grad_input,
                              std::span<double> grad_kernel) {
  const std::size_t len = input.length();
  const std::size_t in_ch = kDayChannels;
  for (std::size_t c = 0; c < kernel.shape.out_channels; ++c) {
    const double* gy = grad_output.row(c).data();
    for (std::size_t i = 0; i < in_ch; ++i) {
      const double* x = input.row(i).data();
      double* gx = grad_input ? grad_input->row(i).data() : nullptr;
      double acc = 0.0;
      for (std::size_t t = 1; t < len; ++t) acc += gy[t] * x[t - 1];
      grad_kernel[(c * in_ch + i) * 2 + 0] += acc;
      if (gx) {
        const double w = kernel.weight(c, i, 0);
        for (std::size_t t = 1; t < len; ++t) gx[t - 1] += w * gy[t];
      }
      if (!mask[i]) continue;  // masked taps neither see input nor receive gradient
      acc = 0.0;
      for (std::size_t t = 1; t < len; ++t) acc += gy[t] * x[t];
      grad_kernel[(c * in_ch + i) * 2 + 1] += acc;
      if (gx) {
        const double w = kernel.weight(c, i, 1);
        for (std::size_t t = 1; t < len; ++t) gx[t] += w * gy[t];
      }
    }
  }
}

SequenceGrid activation(const SequenceGrid& input, Activation a) {
  SequenceGrid out = input;
  if (a.kind == ActivationKind::identity) return out;
  for (double& v : out.data()) v = activate(v, a);
  return out;
}

SequenceGrid pad_left(const SequenceGrid& input, std::size_t columns) {
  SequenceGrid out(input.channels(), input.length() + columns);
  for (std::size_t c = 0; c < input.channels(); ++c) {
    std::copy(input.row(c).begin(), input.row(c).end(), out.row(c).begin() + static_cast<std::ptrdiff_t>(columns));
  }
  return out;
}

SequenceGrid crop_left(const SequenceGrid& input, std::size_t columns) {
  if (columns > input.length()) throw InsufficientLengthError(columns, input.length());
  SequenceGrid out(input.channels(), input.length() - columns);
  for (std::size_t c = 0; c < input.channels(); ++c) {
    std::copy(input.row(c).begin() + static_cast<std::ptrdiff_t>(columns), input.row(c).end(), out.row(c).begin());
  }
  return out;
}

}  // namespace wxgen::ad
