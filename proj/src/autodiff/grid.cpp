// SPDX-License-Identifier: Apache-2.0

#include "wxgen/autodiff/grid.hpp"

#include <algorithm>
#include <cmath>

#include "wxgen/error.hpp"

namespace wxgen::ad {

SequenceGrid::SequenceGrid(std::size_t channels, std::size_t length, double fill)
    : channels_(channels), length_(length), values_(channels * length, fill) {}

SequenceGrid SequenceGrid::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

SequenceGrid SequenceGrid::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t length = rows.empty() ? 0 : rows.front().size();
  SequenceGrid grid(rows.size(), length);
  for (std::size_t c = 0; c < rows.size(); ++c) {
    if (rows[c].size() != length) throw DimensionError("row length", length, rows[c].size());
    std::copy(rows[c].begin(), rows[c].end(), grid.row(c).begin());
  }
  return grid;
}

void SequenceGrid::fill(double value) { std::fill(values_.begin(), values_.end(), value); }

bool SequenceGrid::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace wxgen::ad
