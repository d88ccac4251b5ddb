#pragma once

#include <stdexcept>
#include <string>

namespace billnet {

// Input data is malformed or inconsistent (bad records, roster conflicts).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied an invalid configuration or violated a precondition.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical stage failed (e.g. power iteration did not converge).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace billnet
