// SPDX-License-Identifier: Apache-2.0
//
// Mini-batch teacher-forced training with Adam.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wxgen/model/network.hpp"
#include "wxgen/weather_data.hpp"

namespace wxgen {

struct TrainConfig {
  std::size_t epochs = 2000;
  std::size_t batch_size = 32;
  double lr = 1e-3;
  std::uint64_t seed = 1;
  std::string checkpoint_path;  // empty: keep the best parameters in memory only
  std::string history_path;     // empty: no history file
  std::size_t threads = 1;      // per-item forward/backward lanes
  std::ostream* progress = nullptr;

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double loss = 0.0;
  double seconds = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;  // 1-based; 0 before any epoch completes
  double best_loss = 0.0;
};

/// 1-based index of the first minimum.
std::size_t select_best_epoch(std::span<const double> losses);

/// Each epoch visits every window once in seed-shuffled order. A batch
/// sums the horizon day NLLs of its windows, backpropagates and takes one
/// Adam step. The epoch loss is the mean over (windows x horizon days) of
/// the four-term day NLL, accumulated as the epoch runs. Whenever it
/// improves, the parameters are checkpointed; on return `net` holds the
/// best epoch's parameters.
TrainHistory train(WeatherNet& net, const TrainingWindowSet& windows, const TrainConfig& cfg);

/// Same normalisation as the epoch loss, without updates.
double evaluate_loss(const WeatherNet& net, const TrainingWindowSet& windows);

}  // namespace wxgen
