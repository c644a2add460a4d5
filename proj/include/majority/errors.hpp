#pragma once

#include <stdexcept>
#include <string>

namespace majority {

// A numeric model parameter is outside its admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structural input (edge lists, colorings, dumps) is malformed.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bound was queried outside the region where it is a valid inequality.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Experiment configuration is rejected (unknown keys, zero trials, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Threshold search could not bracket the target probability.
class BracketingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace majority
