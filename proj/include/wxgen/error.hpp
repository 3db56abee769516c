// SPDX-License-Identifier: Apache-2.0
//
// Exception hierarchy shared by every wxgen module. Each module throws the
// most specific subclass it can so callers (and tests) can tell failure
// classes apart without parsing messages.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wxgen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes, lengths or channel counts that do not line up.
class DimensionError : public Error {
 public:
  DimensionError(std::string axis, std::size_t expected, std::size_t actual);
  const std::string& axis() const { return axis_; }
  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::string axis_;
  std::size_t expected_;
  std::size_t actual_;
};

// A sequence too short for the requested operation.
class InsufficientLengthError : public Error {
 public:
  InsufficientLengthError(std::size_t required, std::size_t actual);
  std::size_t required() const { return required_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t required_;
  std::size_t actual_;
};

// Misuse of the autodiff tape (backward before forward, double backward).
class TapeError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  NonFiniteError(const std::string& what, double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Input outside a distribution's support or parameter domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Unparseable text input.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Missing calendar day inside a daily series.
class GapError : public Error {
 public:
  GapError(std::string before, std::string after, std::string missing);
  const std::string& before() const { return before_; }
  const std::string& after() const { return after_; }

 private:
  std::string before_;
  std::string after_;
};

// A physical constraint (maxt >= mint, radn >= 0, rain >= 0) is violated.
class ConstraintError : public Error {
 public:
  ConstraintError(std::size_t row, const std::string& detail);
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  InsufficientDataError(std::size_t available, std::size_t required);
};

// A date or index outside the covered range.
class RangeError : public Error {
 public:
  using Error::Error;
};

class PlanningError : public Error {
 public:
  PlanningError(const std::string& what, long long achieved_t0);
  long long achieved_t0() const { return achieved_t0_; }

 private:
  long long achieved_t0_;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};
class VersionError : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};
class TruncationError : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};
class ChecksumError : public CheckpointError {
 public:
  using CheckpointError::CheckpointError;
};

class TrainingError : public Error {
 public:
  TrainingError(const std::string& what, std::size_t epoch, std::size_t batch);
  std::size_t epoch() const { return epoch_; }
  std::size_t batch() const { return batch_; }

 private:
  std::size_t epoch_;
  std::size_t batch_;
};

// A network asked to produce a horizon it was not trained for, or a
// checkpoint that does not match the configured architecture.
class RepurposeError : public Error {
 public:
  using Error::Error;
};

class CoverageError : public Error {
 public:
  CoverageError(const std::string& what, int year);
  int year() const { return year_; }

 private:
  int year_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wxgen
