// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace wxgen::ad {

/// Channelled 1-D sequence: a dense channels x length matrix stored
/// channel-major, so each channel row is contiguous in time.
class SequenceGrid {
 public:
  SequenceGrid() = default;
  SequenceGrid(std::size_t channels, std::size_t length, double fill = 0.0);

  /// Builds a grid from equal-length channel rows.
  static SequenceGrid from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static SequenceGrid from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t channels() const { return channels_; }
  std::size_t length() const { return length_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t channel, std::size_t t) { return values_[channel * length_ + t]; }
  double operator()(std::size_t channel, std::size_t t) const { return values_[channel * length_ + t]; }

  std::span<double> row(std::size_t channel) { return {values_.data() + channel * length_, length_}; }
  std::span<const double> row(std::size_t channel) const {
    return {values_.data() + channel * length_, length_};
  }

  std::span<double> data() { return values_; }
  std::span<const double> data() const { return values_; }

  void fill(double value);
  bool all_finite() const;
  bool same_shape(const SequenceGrid& other) const {
    return channels_ == other.channels_ && length_ == other.length_;
  }

  friend bool operator==(const SequenceGrid&, const SequenceGrid&) = default;

 private:
  std::size_t channels_ = 0;
  std::size_t length_ = 0;
  std::vector<double> values_;
};

}  // namespace wxgen::ad
