#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace airnet {

// Caller passed something that violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Value outside the support (or image) of a valuation distribution.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// All raw valuations in a round were equal; there is no range to normalize.
class DegenerateProfile : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class InvalidConfig : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class TrainingDiverged : public std::runtime_error {
public:
  explicit TrainingDiverged(std::size_t iteration)
      : std::runtime_error("training diverged: non-finite loss at iteration " +
                           std::to_string(iteration)),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

private:
  std::size_t iteration_;
};

class CheckpointError : public std::runtime_error {
public:
  enum class Kind { VersionMismatch, Malformed, DimensionMismatch };

  CheckpointError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

// The UAV has no flight budget left; no further rounds can be played.
class EpisodeExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace airnet
