#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace osa {

// Caller broke a documented precondition (shape mismatch, M > K, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid user-supplied configuration: unknown scenario, bad hyperparameter.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values or a division that should never reach zero.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneracyError : public NumericError {
 public:
  using NumericError::NumericError;
};

class EpisodeComplete : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A policy or environment contract failed inside an episode.
class EpisodeFailure : public std::runtime_error {
 public:
  EpisodeFailure(std::size_t step, const std::string& what)
      : std::runtime_error("episode failed at step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw ContractViolation(what);
}
}  // namespace detail

}  // namespace osa
