#pragma once

#include <stdexcept>
#include <string>

namespace ladder {

// Index or argument outside the mathematical domain (n + alpha < 0, x < 0, |m| > j, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller asked for something the chosen setup cannot deliver (rule order too low,
// grid too coarse, too few sample states).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedOperatorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An identity that must hold by construction did not (non-eigenvector Casimir, ...).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ladder
