#pragma once

#include <stdexcept>
#include <string>

namespace align {

// Invalid model parameters, malformed inputs, unparseable files or configs.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A function evaluated outside its mathematical domain (support violation,
// missing root, non-positive Poisson mean, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The request is well-formed but too large to execute: n! enumeration beyond
// the exhaustive limit, or a graph that would not fit in memory.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Filesystem failures (unreadable input, unwritable output).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace align
