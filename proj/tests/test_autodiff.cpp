// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "wxgen/autodiff/adam.hpp"
#include "wxgen/autodiff/ops.hpp"
#include "wxgen/autodiff/tape.hpp"
#include "wxgen/error.hpp"

using namespace wxgen;
using namespace wxgen::ad;

namespace {

SequenceGrid random_grid(std::size_t channels, std::size_t length, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SequenceGrid g(channels, length);
  for (double& v : g.data()) v = u(rng);
  return g;
}

void randomize(ParameterStore& store, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (double& v : store.values()) v = u(rng);
}

// 0.5 * sum of squares, as a custom tape node.
Var half_square_sum(Tape& tape, Var x) {
  double s = 0.0;
  for (double v : tape.value(x).data()) s += 0.5 * v * v;
  return tape.record(SequenceGrid(1, 1, s), [x](Tape& tp, const SequenceGrid& gy) {
    const SequenceGrid xv = tp.value(x);
    SequenceGrid& gx = tp.grad_mut(x);
    for (std::size_t j = 0; j < gx.size(); ++j) gx.data()[j] += gy(0, 0) * xv.data()[j];
  });
}

}  // namespace

TEST_CASE("dilated_conv hand example and length law") {
  ParameterStore store;
  const auto id = store.add("k", {1, 1, 2, false});
  store.kernel_values(id)[0] = 1.0;
  store.kernel_values(id)[1] = 1.0;
  const auto x = SequenceGrid::from_rows({{1, 2, 3, 4}});
  CHECK(dilated_conv(x, store.kernel(id), 2) == SequenceGrid::from_rows({{4, 6}}));

  const SequenceGrid x8(1, 8, 1.0);
  CHECK(dilated_conv(x8, store.kernel(id), 4).length() == 4);
  for (std::size_t width = 1; width <= 4; ++width) {
    for (std::size_t d = 1; d <= 4; ++d) {
      ParameterStore s;
      const auto k = s.add("k", {2, 3, width, true});
      const SequenceGrid in(3, 20, 0.5);
      CHECK(dilated_conv(in, s.kernel(k), d).length() == 20 - (width - 1) * d);
    }
  }
}

TEST_CASE("dilated_conv with zero kernel and too-short input") {
  ParameterStore store;
  const auto id = store.add("k", {3, 2, 3, true});
  std::mt19937_64 rng(3);
  const SequenceGrid out = dilated_conv(random_grid(2, 10, rng), store.kernel(id), 2);
  CHECK(out == SequenceGrid(3, 6));
  CHECK_THROWS_AS(dilated_conv(SequenceGrid(2, 4), store.kernel(id), 2), InsufficientLengthError);
  CHECK_THROWS_AS(dilated_conv(SequenceGrid(3, 10), store.kernel(id), 1), DimensionError);
}

TEST_CASE("dilated_conv is linear for bias-free kernels") {
  std::mt19937_64 rng(11);
  ParameterStore store;
  const auto id = store.add("k", {3, 2, 3, false});
  randomize(store, rng);
  const SequenceGrid x = random_grid(2, 15, rng);
  const SequenceGrid y = random_grid(2, 15, rng);
  const double a = 1.7;
  const double b = -0.3;
  SequenceGrid combo(2, 15);
  for (std::size_t j = 0; j < combo.size(); ++j) combo.data()[j] = a * x.data()[j] + b * y.data()[j];
  const SequenceGrid lhs = dilated_conv(combo, store.kernel(id), 2);
  const SequenceGrid cx = dilated_conv(x, store.kernel(id), 2);
  const SequenceGrid cy = dilated_conv(y, store.kernel(id), 2);
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    const double rhs = a * cx.data()[j] + b * cy.data()[j];
    CHECK(std::abs(lhs.data()[j] - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("strided dilation-1 conv picks every stride-th output of the dense conv") {
  std::mt19937_64 rng(5);
  ParameterStore store;
  const auto id = store.add("k", {2, 3, 3, true});
  randomize(store, rng);
  const SequenceGrid x = random_grid(3, 27, rng);
  const SequenceGrid dense = dilated_conv(x, store.kernel(id), 1);
  const SequenceGrid strided = dilated_conv(x, store.kernel(id), 1, 3);
  REQUIRE(strided.length() == 9);
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t t = 0; t < 9; ++t) CHECK(strided(c, t) == dense(c, 3 * t));
  }
}

TEST_CASE("masked_day_conv hand examples") {
  ParameterStore store;
  const auto id = store.add("m", {1, 4, 2, false});
  for (double& w : store.kernel_values(id)) w = 1.0;
  const SequenceGrid ones(4, 3, 1.0);
  CHECK(masked_day_conv(ones, store.kernel(id), {false, false, false, false}) == SequenceGrid::from_rows({{0, 4, 4}}));
  CHECK(masked_day_conv(ones, store.kernel(id), {true, true, true, true}) == SequenceGrid::from_rows({{0, 8, 8}}));
  ParameterStore zero;
  const auto z = zero.add("m", {2, 4, 2, false});
  CHECK(masked_day_conv(ones, zero.kernel(z), {true, true, false, false}) == SequenceGrid(2, 3));
}

TEST_CASE("masked_day_conv ignores same-day entries whose mask bit is 0") {
  std::mt19937_64 rng(17);
  ParameterStore store;
  const auto id = store.add("m", {3, 4, 2, false});
  randomize(store, rng);
  const DayMask mask{true, false, true, false};
  const SequenceGrid x = random_grid(4, 6, rng);
  const SequenceGrid base = masked_day_conv(x, store.kernel(id), mask);
  for (std::size_t i : {1u, 3u}) {
    // Perturb only the last column: it enters solely as a same-day input.
    SequenceGrid p = x;
    p(i, 5) += 3.0;
    CHECK(masked_day_conv(p, store.kernel(id), mask) == base);
  }
  SequenceGrid p = x;
  p(0, 5) += 3.0;
  CHECK_FALSE(masked_day_conv(p, store.kernel(id), mask) == base);
}

TEST_CASE("pointwise_conv examples") {
  ParameterStore store;
  const auto id = store.add("p", {1, 2, 1, true});
  store.kernel_values(id)[0] = 1.0;
  store.kernel_values(id)[1] = 1.0;
  const auto x = SequenceGrid::from_rows({{1, 1, 1}, {2, 2, 2}});
  CHECK(pointwise_conv(x, store.kernel(id)) == SequenceGrid::from_rows({{3, 3, 3}}));

  ParameterStore eye;
  const auto e = eye.add("p", {2, 2, 1, true});
  eye.kernel_values(e)[0] = 1.0;
  eye.kernel_values(e)[3] = 1.0;
  CHECK(pointwise_conv(x, eye.kernel(e)) == x);

  ParameterStore b;
  const auto bid = b.add("p", {1, 2, 1, true});
  b.kernel_values(bid)[2] = 2.5;
  CHECK(pointwise_conv(x, b.kernel(bid)) == SequenceGrid::from_rows({{2.5, 2.5, 2.5}}));
}

TEST_CASE("activations") {
  CHECK(activate(0.0, Activation::softplus(1e-3)) == doctest::Approx(0.694147).epsilon(1e-6));
  CHECK(activate(-5.0, Activation::relu()) == 0.0);
  CHECK(activate(0.0, Activation::tanh()) == 0.0);
  CHECK(activate(1.25, Activation::identity()) == 1.25);
  CHECK(softplus(-800.0) >= 0.0);
  CHECK(softplus(800.0) == doctest::Approx(800.0));
}

TEST_CASE("day masks") {
  const int ok[] = {1, 1, 0, 0};
  CHECK(make_day_mask(ok) == DayMask{true, true, false, false});
  const int short_mask[] = {1, 0, 0};
  CHECK_THROWS_AS(make_day_mask(short_mask), DimensionError);
  const int bad[] = {1, 2, 0, 0};
  CHECK_THROWS_AS(make_day_mask(bad), DomainError);
}

TEST_CASE("tape gradients of simple graphs") {
  SUBCASE("loss = w * x") {
    ParameterStore store;
    const auto id = store.add("w", {1, 1, 1, false});
    store.kernel_values(id)[0] = 0.4;
    Tape tape(store);
    const Var y = tape.pointwise_conv(tape.input(SequenceGrid(1, 1, 3.0)), id);
    tape.backward(y);
    CHECK(tape.kernel_gradient(id)[0] == doctest::Approx(3.0));
  }
  SUBCASE("loss = tanh(w) at w = 0") {
    ParameterStore store;
    const auto id = store.add("w", {1, 1, 1, false});
    Tape tape(store);
    const Var y = tape.activation(tape.pointwise_conv(tape.input(SequenceGrid(1, 1, 1.0)), id), Activation::tanh());
    tape.backward(y);
    CHECK(tape.kernel_gradient(id)[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("tape misuse") {
  ParameterStore store;
  const auto id = store.add("w", {1, 1, 1, false});
  Tape tape(store);
  CHECK_THROWS_AS(tape.backward(Var{0}), TapeError);
  const Var y = tape.pointwise_conv(tape.input(SequenceGrid(1, 1, 2.0)), id);
  tape.backward(y);
  CHECK_THROWS_AS(tape.backward(y), TapeError);
  tape.reset();
  const Var big = tape.input(SequenceGrid(1, 2, 1.0));
  CHECK_THROWS_AS(tape.backward(big), DimensionError);
  tape.reset();
  const Var nan = tape.input(SequenceGrid(1, 1, std::nan("")));
  CHECK_THROWS_AS(tape.backward(nan), NonFiniteError);
}

TEST_CASE("composed graph gradients match central differences") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    ParameterStore store;
    const auto m = store.add("masked", {3, 4, 2, false});
    const auto d1 = store.add("d1", {4, 3, 2, true});
    const auto d2 = store.add("d2", {3, 4, 3, true});
    const auto p = store.add("p", {2, 3, 1, true});
    randomize(store, rng);
    const SequenceGrid x = random_grid(4, 14, rng);
    const DayMask mask{true, (trial % 2) == 0, false, true};

    auto loss_of = [&](const ParameterStore& s, Tape* keep) {
      Tape local(s);
      Tape& tape = keep ? *keep : local;
      Var h = tape.pad_left(tape.input(x), 2);
      h = tape.crop_left(tape.masked_day_conv(h, m, mask), 1);
      h = tape.activation(tape.dilated_conv(h, d1, 1), Activation::tanh());
      h = tape.activation(tape.dilated_conv(h, d2, 2), Activation::softplus(1e-3));
      h = tape.pointwise_conv(h, p);
      const Var loss = half_square_sum(tape, h);
      return std::pair{tape.value(loss)(0, 0), loss};
    };

    Tape tape(store);
    const auto [value, loss] = loss_of(store, &tape);
    tape.backward(loss);
    const auto analytic = tape.parameter_gradients();

    const double h = 1e-5;
    double worst = 0.0;
    for (std::size_t j = 0; j < store.total_count(); ++j) {
      ParameterStore plus = store;
      ParameterStore minus = store;
      plus.values()[j] += h;
      minus.values()[j] -= h;
      const double fd = (loss_of(plus, nullptr).first - loss_of(minus, nullptr).first) / (2.0 * h);
      const double denom = std::max({std::abs(fd), std::abs(analytic[j]), 1e-3});
      worst = std::max(worst, std::abs(fd - analytic[j]) / denom);
    }
    CHECK(worst <= 1e-4);
    CHECK(std::isfinite(value));
  }
}

TEST_CASE("adam") {
  SUBCASE("first step moves by about lr against the gradient") {
    std::vector<double> params{0.0};
    const std::vector<double> grads{1.0};
    AdamState state(1, AdamConfig{});
    adam_step(params, grads, state);
    CHECK(params[0] == doctest::Approx(-0.001).epsilon(1e-6));
    CHECK(state.step_count == 1);
  }
  SUBCASE("zero gradient leaves parameters alone") {
    std::vector<double> params{0.5, -2.0};
    const std::vector<double> grads{0.0, 0.0};
    AdamState state(2, AdamConfig{});
    adam_step(params, grads, state);
    CHECK(params == std::vector<double>{0.5, -2.0});
    CHECK(state.step_count == 1);
  }
  SUBCASE("deterministic") {
    std::vector<double> a{0.1, 0.2, 0.3};
    std::vector<double> b = a;
    AdamState sa(3, AdamConfig{});
    AdamState sb(3, AdamConfig{});
    const std::vector<double> g{0.3, -1.0, 2.0};
    for (int i = 0; i < 5; ++i) {
      adam_step(a, g, sa);
      adam_step(b, g, sb);
    }
    CHECK(a == b);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(AdamState(1, AdamConfig{0.0}), DomainError);
    std::vector<double> params{0.0};
    const std::vector<double> grads{1.0, 2.0};
    AdamState state(1, AdamConfig{});
    CHECK_THROWS_AS(adam_step(params, grads, state), DimensionError);
  }
}

TEST_CASE("parameter store flattening") {
  ParameterStore store;
  const auto a = store.add("a", {2, 3, 2, true});
  const auto b = store.add("b", {1, 2, 1, false});
  CHECK(store.total_count() == 2 * 3 * 2 + 2 + 2);
  CHECK(store.entry(b).offset == 14);
  store.kernel_values(a)[(1 * 3 + 2) * 2 + 1] = 7.0;
  CHECK(store.kernel(a).weight(1, 2, 1) == 7.0);
  CHECK(store.values()[11] == 7.0);
  CHECK(store.find("b") == b);
  CHECK_THROWS(store.add("a", {1, 1, 1, true}));
}
