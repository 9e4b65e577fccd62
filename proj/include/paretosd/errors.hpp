#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace paretosd {

/// A point or tangent lies outside the manifold's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-finite values, eigensolver breakdown, or an inner solver that failed to
/// converge. Carries the solver iteration when raised from inside a run.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what,
                        std::optional<long> iteration = std::nullopt)
      : std::runtime_error(iteration ? "iteration " + std::to_string(*iteration) + ": " + what
                                     : what),
        iteration_(iteration) {}

  std::optional<long> iteration() const { return iteration_; }

 private:
  std::optional<long> iteration_;
};

/// Caller misuse: mismatched lengths, unknown keys, out-of-range options.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No dyadic step within the halving budget satisfied the Armijo test.
class LineSearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace paretosd
