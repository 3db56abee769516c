// SPDX-License-Identifier: Apache-2.0

#include "wxgen/autodiff/tape.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wxgen/error.hpp"

namespace wxgen::ad {

Tape::Tape(const ParameterStore& params) : params_(&params), param_grad_(params.total_count(), 0.0) {}

Var Tape::push(SequenceGrid value, BackwardFn backward) {
  if (backward_done_) throw TapeError("tape already consumed by backward(); call reset() first");
  Node node;
  node.grad = SequenceGrid(value.channels(), value.length());
  node.value = std::move(value);
  node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var{nodes_.size() - 1};
}

Var Tape::input(SequenceGrid values) { return push(std::move(values), nullptr); }

Var Tape::record(SequenceGrid value, BackwardFn backward) { return push(std::move(value), std::move(backward)); }

std::span<double> Tape::kernel_gradient(std::size_t kernel_id) {
  const auto& e = params_->entry(kernel_id);
  return {param_grad_.data() + e.offset, e.shape.size()};
}

Var Tape::pad_left(Var x, std::size_t columns) {
  return push(ad::pad_left(value(x), columns), [x, columns](Tape& tape, const SequenceGrid& gy) {
    SequenceGrid& gx = tape.grad_mut(x);
    for (std::size_t c = 0; c < gx.channels(); ++c) {
      auto src = gy.row(c);
      auto dst = gx.row(c);
      for (std::size_t t = 0; t < dst.size(); ++t) dst[t] += src[t + columns];
    }
  });
}

Var Tape::crop_left(Var x, std::size_t columns) {
  return push(ad::crop_left(value(x), columns), [x, columns](Tape& tape, const SequenceGrid& gy) {
    SequenceGrid& gx = tape.grad_mut(x);
    for (std::size_t c = 0; c < gx.channels(); ++c) {
      auto src = gy.row(c);
      auto dst = gx.row(c);
      for (std::size_t t = 0; t < src.size(); ++t) dst[t + columns] += src[t];
    }
  });
}

Var Tape::dilated_conv(Var x, std::size_t kernel_id, std::size_t dilation) {
  KernelView k = params_->kernel(kernel_id);
  return push(ad::dilated_conv(value(x), k, dilation), [x, kernel_id, dilation](Tape& tape, const SequenceGrid& gy) {
    ad::dilated_conv_backward(tape.value(x), tape.parameters().kernel(kernel_id), dilation, gy, &tape.grad_mut(x),
                              tape.kernel_gradient(kernel_id));
  });
}

Var Tape::pointwise_conv(Var x, std::size_t kernel_id) {
  if (params_->kernel(kernel_id).shape.width != 1) {
    throw DimensionError("pointwise kernel width", 1, params_->kernel(kernel_id).shape.width);
  }
  return dilated_conv(x, kernel_id, 1);
}

Var Tape::masked_day_conv(Var x, std::size_t kernel_id, const DayMask& mask) {
  KernelView k = params_->kernel(kernel_id);
  return push(ad::masked_day_conv(value(x), k, mask), [x, kernel_id, mask](Tape& tape, const SequenceGrid& gy) {
    ad::masked_day_conv_backward(tape.value(x), tape.parameters().kernel(kernel_id), mask, gy, &tape.grad_mut(x),
                                 tape.kernel_gradient(kernel_id));
  });
}

Var Tape::activation(Var x, Activation a) {
  return push(ad::activation(value(x), a), [x, a](Tape& tape, const SequenceGrid& gy) {
    const auto z = tape.value(x).data();
    auto gx = tape.grad_mut(x).data();
    const auto g = gy.data();
    for (std::size_t j = 0; j < z.size(); ++j) gx[j] += g[j] * activate_derivative(z[j], a);
  });
}

void Tape::backward(Var loss) {
  if (nodes_.empty()) throw TapeError("backward() called before any forward pass was recorded");
  if (backward_done_) throw TapeError("backward() called twice on the same recorded pass");
  const SequenceGrid& lv = value(loss);
  if (lv.channels() != 1 || lv.length() != 1) throw DimensionError("loss size", 1, lv.size());
  if (!std::isfinite(lv(0, 0))) throw NonFiniteError("loss", lv(0, 0));
  backward_done_ = true;

  nodes_[loss.index].grad(0, 0) = 1.0;
  for (std::size_t i = loss.index + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.backward) continue;
    const auto g = n.grad.data();
    if (std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; })) continue;
    n.backward(*this, n.grad);
  }
}

void Tape::reset() {
  nodes_.clear();
  std::fill(param_grad_.begin(), param_grad_.end(), 0.0);
  backward_done_ = false;
}

}  // namespace wxgen::ad
