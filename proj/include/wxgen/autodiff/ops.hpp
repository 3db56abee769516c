// SPDX-License-Identifier: Apache-2.0
//
// Forward and backward kernels for the sequence operations the weather
// network is built from. Forward functions are pure; backward functions
// accumulate (+=) into the supplied gradient buffers.
//
// Every output element of a convolution is accumulated in the same order,
// bias first and then (in_channel, tap) lexicographically, regardless of
// stride or dilation. The single-position evaluation path relies on this to
// reproduce full forward passes bit for bit.

#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "wxgen/autodiff/grid.hpp"
#include "wxgen/autodiff/parameters.hpp"

namespace wxgen::ad {

enum class ActivationKind { identity, tanh, relu, softplus_eps };

struct Activation {
  ActivationKind kind = ActivationKind::identity;
  double eps = 0.0;  // only used by softplus_eps

  static Activation identity() { return {ActivationKind::identity, 0.0}; }
  static Activation tanh() { return {ActivationKind::tanh, 0.0}; }
  static Activation relu() { return {ActivationKind::relu, 0.0}; }
  static Activation softplus(double eps) { return {ActivationKind::softplus_eps, eps}; }
};

/// Same-day visibility for the masked day convolution: entry i admits
/// channel i of the current day.
using DayMask = std::array<bool, 4>;

inline constexpr std::size_t kDayChannels = 4;

/// Builds a DayMask from 0/1 values; anything but exactly four 0/1 entries
/// is rejected.
DayMask make_day_mask(std::span<const int> bits);

/// Numerically stable log(1 + exp(z)).
double softplus(double z);
/// d softplus / dz, the logistic function.
double sigmoid(double z);

double activate(double z, Activation a);
/// Derivative of the activation, given the pre-activation z.
double activate_derivative(double z, Activation a);

/// Valid dilated convolution with optional output stride:
///   out[c, t] = bias_c + sum_{i,k} w[c,i,k] * in[i, t*stride + k*dilation].
SequenceGrid dilated_conv(const SequenceGrid& input, const KernelView& kernel, std::size_t dilation,
                          std::size_t stride = 1);
void dilated_conv_backward(const SequenceGrid& input, const KernelView& kernel, std::size_t dilation,
                           const SequenceGrid& grad_output, SequenceGrid* grad_input,
                           std::span<double> grad_kernel);

/// 1x1 convolution: a per-position affine map across channels.
SequenceGrid pointwise_conv(const SequenceGrid& input, const KernelView& kernel);

/// Width-2, bias-free convolution over 4-channel day columns. Output
/// position t >= 1 combines the full column t-1 with the mask-filtered
/// column t; position 0 is the prepended zero column, so the length is
/// preserved.
SequenceGrid masked_day_conv(const SequenceGrid& input, const KernelView& kernel, const DayMask& mask);
void masked_day_conv_backward(const SequenceGrid& input, const KernelView& kernel, const DayMask& mask,
                              const SequenceGrid& grad_output, SequenceGrid* grad_input,
                              std::span<double> grad_kernel);

SequenceGrid activation(const SequenceGrid& input, Activation a);

SequenceGrid pad_left(const SequenceGrid& input, std::size_t columns);
/// Drops the first `columns` positions.
SequenceGrid crop_left(const SequenceGrid& input, std::size_t columns);

}  // namespace wxgen::ad
