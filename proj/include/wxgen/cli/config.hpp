// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: a sectioned key=value file.
//
//   [paths]         data, checkpoint, history, out
//   [architecture]  l, m, channels (comma list), horizon, t0_min, t0_max, epsilon
//   [training]      epochs, batch_size, lr, seed, split_date, threads
//   [generation]    n_samples, master_seed, start_date, write_met, threads
//   [baseline]      years_back, n_samples, master_seed, target_start
//   [evaluation]    periods, ensembles, truth, yields (method=path list), true_yields
//
// `#` and `;` start comments. Relative paths are resolved against the
// directory holding the config file.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wxgen/dates.hpp"
#include "wxgen/evaluate.hpp"
#include "wxgen/model/architecture.hpp"

namespace wxgen {

struct RunConfig {
  struct Paths {
    std::string data;
    std::string checkpoint;
    std::string history;  // default: <out>/history.csv
    std::string out = ".";
  } paths;

  struct Architecture {
    std::size_t l = 7;
    std::size_t m = 4;
    std::vector<std::size_t> channels{8, 16, 32, 64, 64, 32, 16, 8, 2};
    std::size_t horizon = 365;
    std::size_t t0_min = 1;
    std::size_t t0_max = std::numeric_limits<std::size_t>::max();
    double epsilon = 1e-3;
  } architecture;

  struct Training {
    std::size_t epochs = 2000;
    std::size_t batch_size = 32;
    double lr = 1e-3;
    std::uint64_t seed = 1;
    std::optional<Date> split_date;
    std::size_t threads = 1;
  } training;

  struct Generation {
    std::size_t n_samples = 1000;
    std::uint64_t master_seed = 1;
    std::optional<Date> start_date;
    bool write_met = false;
    std::size_t threads = 1;
  } generation;

  struct Baseline {
    std::size_t years_back = 30;
    std::size_t n_samples = 1000;
    std::uint64_t master_seed = 1;
    std::optional<Date> target_start;  // default: generation.start_date
  } baseline;

  struct Evaluation {
    std::vector<Period> periods{Period::day, Period::week, Period::month};
    std::vector<std::string> ensembles;  // default: generated + baseline outputs
    std::string truth;                   // default: paths.data
    std::vector<std::pair<std::string, std::string>> yields;  // method -> path
    std::string true_yields;
  } evaluation;
};

/// `base_dir` resolves relative paths; empty leaves them as written.
RunConfig parse_config(std::string_view text, const std::string& base_dir = "");
RunConfig load_config(const std::string& path);

/// plan_architecture() over the architecture block.
ArchitectureSpec planned_spec(const RunConfig& cfg);

}  // namespace wxgen
