// SPDX-License-Identifier: Apache-2.0
//
// Reverse-mode tape over SequenceGrid values. A Tape records one forward
// pass against an immutable ParameterStore and owns the parameter gradient
// buffer for that pass, so several tapes can share one store concurrently.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wxgen/autodiff/grid.hpp"
#include "wxgen/autodiff/ops.hpp"
#include "wxgen/autodiff/parameters.hpp"

namespace wxgen::ad {

struct Var {
  std::size_t index = 0;
};

class Tape {
 public:
  /// Called during backward with this node's output gradient.
  using BackwardFn = std::function<void(Tape&, const SequenceGrid& grad_output)>;

  explicit Tape(const ParameterStore& params);

  Var input(SequenceGrid values);
  Var pad_left(Var x, std::size_t columns);
  Var crop_left(Var x, std::size_t columns);
  Var dilated_conv(Var x, std::size_t kernel_id, std::size_t dilation);
  Var pointwise_conv(Var x, std::size_t kernel_id);
  Var masked_day_conv(Var x, std::size_t kernel_id, const DayMask& mask);
  Var activation(Var x, Activation a);

  /// Records a caller-defined node. `backward` must route the output
  /// gradient into its inputs via grad_mut() / parameter_gradients_mut().
  Var record(SequenceGrid value, BackwardFn backward);

  const SequenceGrid& value(Var v) const { return nodes_.at(v.index).value; }
  const SequenceGrid& grad(Var v) const { return nodes_.at(v.index).grad; }
  SequenceGrid& grad_mut(Var v) { return nodes_.at(v.index).grad; }

  /// Propagates d(loss)/d(.) to every recorded node and parameter. `loss`
  /// must be a finite 1x1 node. A tape supports exactly one backward pass;
  /// call reset() before recording the next forward pass.
  void backward(Var loss);

  std::span<const double> parameter_gradients() const { return param_grad_; }
  std::span<double> parameter_gradients_mut() { return param_grad_; }
  std::span<double> kernel_gradient(std::size_t kernel_id);

  const ParameterStore& parameters() const { return *params_; }
  std::size_t node_count() const { return nodes_.size(); }
  bool backward_done() const { return backward_done_; }

  /// Clears all nodes and zeroes parameter gradients.
  void reset();

 private:
  struct Node {
    SequenceGrid value;
    SequenceGrid grad;
    BackwardFn backward;
  };

  Var push(SequenceGrid value, BackwardFn backward);

  const ParameterStore* params_;
  std::vector<Node> nodes_;
  std::vector<double> param_grad_;
  bool backward_done_ = false;
};

}  // namespace wxgen::ad
