// SPDX-License-Identifier: Apache-2.0

#include "wxgen/error.hpp"

#include <sstream>
#include <utility>

namespace wxgen {

namespace {

std::string dimension_message(const std::string& axis, std::size_t expected, std::size_t actual) {
  std::ostringstream os;
  os << "dimension mismatch on " << axis << ": expected " << expected << ", got " << actual;
  return os.str();
}

}  // namespace

DimensionError::DimensionError(std::string axis, std::size_t expected, std::size_t actual)
    : Error(dimension_message(axis, expected, actual)),
      axis_(std::move(axis)),
      expected_(expected),
      actual_(actual) {}

InsufficientLengthError::InsufficientLengthError(std::size_t required, std::size_t actual)
    : Error("insufficient length: need at least " + std::to_string(required) + " positions, got " +
            std::to_string(actual)),
      required_(required),
      actual_(actual) {}

NonFiniteError::NonFiniteError(const std::string& what, double value)
    : Error(what + " is not finite (" + std::to_string(value) + ")"), value_(value) {}

GapError::GapError(std::string before, std::string after, std::string missing)
    : Error("gap in daily series between " + before + " and " + after + " (missing " + missing + ")"),
      before_(std::move(before)),
      after_(std::move(after)) {}

ConstraintError::ConstraintError(std::size_t row, const std::string& detail)
    : Error("constraint violation at row " + std::to_string(row) + ": " + detail), row_(row) {}

InsufficientDataError::InsufficientDataError(std::size_t available, std::size_t required)
    : Error("insufficient data: series has N=" + std::to_string(available) +
            " days but window length T=" + std::to_string(required)) {}

PlanningError::PlanningError(const std::string& what, long long achieved_t0)
    : Error(what + " (achieved t0=" + std::to_string(achieved_t0) + ")"), achieved_t0_(achieved_t0) {}

TrainingError::TrainingError(const std::string& what, std::size_t epoch, std::size_t batch)
    : Error(what + " at epoch " + std::to_string(epoch) + ", batch " + std::to_string(batch)),
      epoch_(epoch),
      batch_(batch) {}

CoverageError::CoverageError(const std::string& what, int year) : Error(what), year_(year) {}

}  // namespace wxgen
