#pragma once

#include <stdexcept>
#include <string>

namespace pass {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent configuration (CLI exit code 1).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A user position coincides with a radiating element, so 1/D is singular.
class DegenerateGeometry : public Error {
public:
  using Error::Error;
};

/// An iterative routine hit its hard cap without meeting its stopping rule.
class IterationLimit : public Error {
public:
  using Error::Error;
};

}  // namespace pass
