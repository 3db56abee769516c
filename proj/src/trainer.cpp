// SPDX-License-Identifier: Apache-2.0

#include "wxgen/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <thread>

#include "wxgen/autodiff/adam.hpp"
#include "wxgen/error.hpp"
#include "wxgen/model/checkpoint.hpp"
#include "wxgen/text.hpp"

namespace wxgen {

namespace {

void check_windows(const WeatherNet& net, const TrainingWindowSet& windows) {
  if (!windows.source) throw DimensionError("training window source series", 1, 0);
  const ArchitectureSpec& spec = net.spec();
  if (windows.window_length != spec.window) throw DimensionError("window length T", spec.window, windows.window_length);
  if (windows.conditioning != spec.conditioning) {
    throw DimensionError("conditioning length t0", spec.conditioning, windows.conditioning);
  }
  if (windows.count() == 0) throw InsufficientDataError(0, 1);
}

// Standardised copy of the whole source series, computed once.
std::vector<DayVector> standardized_source(const WeatherNet& net, const TrainingWindowSet& windows) {
  return standardize(*windows.source, net.stats());
}

struct WindowSlices {
  ad::SequenceGrid input;
  std::span<const DayVector> targets;
};

WindowSlices slice_window(const std::vector<DayVector>& standardized, const TrainingWindowSet& windows,
                          std::size_t index) {
  const std::size_t start = windows.starts[index];
  const std::span<const DayVector> inputs(standardized.data() + start, windows.window_length);
  const std::span<const DayVector> targets(windows.source->days.data() + start + windows.conditioning,
                                           windows.horizon());
  return {WeatherNet::window_grid(inputs), targets};
}

// Forward + backward of one window on a private tape.
double item_loss_and_gradient(const WeatherNet& net, const std::vector<DayVector>& standardized,
                              const TrainingWindowSet& windows, std::size_t index, std::vector<double>& grad) {
  const WindowSlices w = slice_window(standardized, windows, index);
  ad::Tape tape(net.parameters());
  const ad::Var loss = net.record_loss(tape, w.input, w.targets);
  const double value = tape.value(loss)(0, 0);
  if (!std::isfinite(value)) return value;
  tape.backward(loss);
  const auto g = tape.parameter_gradients();
  grad.assign(g.begin(), g.end());
  return value;
}

void write_history_row(std::ostream& out, const EpochRecord& r, std::size_t best) {
  out << r.epoch << ',' << format_real(r.loss) << ',' << best << '\n';
  out.flush();
}

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (batch_size < 1) throw ConfigError("batch_size must be at least 1");
  if (!(lr > 0.0)) throw ConfigError("learning rate must be positive");
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

std::size_t select_best_epoch(std::span<const double> losses) {
  if (losses.empty()) return 0;
  return static_cast<std::size_t>(std::min_element(losses.begin(), losses.end()) - losses.begin()) + 1;
}

TrainHistory train(WeatherNet& net, const TrainingWindowSet& windows, const TrainConfig& cfg) {
  cfg.validate();
  check_windows(net, windows);
  const std::vector<DayVector> standardized = standardized_source(net, windows);
  const std::size_t n_params = net.parameters().total_count();
  const std::size_t n_windows = windows.count();
  const double normaliser = static_cast<double>(n_windows) * static_cast<double>(windows.horizon());

  ad::AdamState adam(n_params, ad::AdamConfig{cfg.lr});
  Rng shuffle_rng(cfg.seed);
  std::vector<std::size_t> order(n_windows);
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::ofstream history_file;
  if (!cfg.history_path.empty()) {
    history_file.open(cfg.history_path, std::ios::trunc);
    if (!history_file) throw Error("cannot write history file " + cfg.history_path);
    history_file << "epoch,loss,best\n";
  }

  TrainHistory history;
  std::vector<double> best_params;
  std::vector<double> batch_grad(n_params);
  const std::size_t lanes = std::min(cfg.threads, cfg.batch_size);
  std::vector<std::vector<double>> item_grads(cfg.batch_size);
  std::vector<double> item_losses(cfg.batch_size);

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto t_start = std::chrono::steady_clock::now();
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double epoch_sum = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t first = 0; first < n_windows; first += cfg.batch_size, ++batch_index) {
      const std::size_t count = std::min(cfg.batch_size, n_windows - first);
      auto run_lane = [&](std::size_t lane) {
        for (std::size_t j = lane; j < count; j += lanes) {
          item_losses[j] = item_loss_and_gradient(net, standardized, windows, order[first + j], item_grads[j]);
        }
      };
      if (lanes == 1) {
        run_lane(0);
      } else {
        std::vector<std::jthread> workers;
        for (std::size_t lane = 0; lane < lanes; ++lane) workers.emplace_back(run_lane, lane);
      }
      // Reduction in item order, independent of the lane count.
      std::fill(batch_grad.begin(), batch_grad.end(), 0.0);
      double batch_loss = 0.0;
      for (std::size_t j = 0; j < count; ++j) {
        if (!std::isfinite(item_losses[j])) {
          throw TrainingError("non-finite loss", epoch, batch_index);
        }
        batch_loss += item_losses[j];
        for (std::size_t p = 0; p < n_params; ++p) batch_grad[p] += item_grads[j][p];
      }
      for (double g : batch_grad) {
        if (!std::isfinite(g)) throw TrainingError("non-finite gradient", epoch, batch_index);
      }
      epoch_sum += batch_loss;
      ad::adam_step(net.parameters().values(), batch_grad, adam);
    }

    EpochRecord record;
    record.epoch = epoch;
    record.loss = epoch_sum / normaliser;
    record.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    history.epochs.push_back(record);
    if (history.best_epoch == 0 || record.loss < history.best_loss) {
      history.best_epoch = epoch;
      history.best_loss = record.loss;
      const auto values = net.parameters().values();
      best_params.assign(values.begin(), values.end());
      if (!cfg.checkpoint_path.empty()) save_checkpoint(cfg.checkpoint_path, net, epoch);
    }
    if (cfg.progress != nullptr) {
      *cfg.progress << "epoch " << epoch << " loss " << format_real(record.loss) << " secs "
                    << format_fixed(record.seconds, 3) << '\n';
      cfg.progress->flush();
    }
    if (history_file.is_open()) write_history_row(history_file, record, history.best_epoch);
  }

  std::copy(best_params.begin(), best_params.end(), net.parameters().values().begin());
  return history;
}

double evaluate_loss(const WeatherNet& net, const TrainingWindowSet& windows) {
  check_windows(net, windows);
  const std::vector<DayVector> standardized = standardized_source(net, windows);
  double total = 0.0;
  for (std::size_t i = 0; i < windows.count(); ++i) {
    const WindowSlices w = slice_window(standardized, windows, i);
    const std::vector<DayDistribution> dists = net.forward(w.input);
    double item = 0.0;
    for (std::size_t t = 0; t < dists.size(); ++t) item += day_nll(w.targets[t], dists[t]);
    total += item;
  }
  return total / (static_cast<double>(windows.count()) * static_cast<double>(windows.horizon()));
}

}  // namespace wxgen
