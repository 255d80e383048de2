#pragma once

#include <stdexcept>
#include <string>

namespace fieldcheck {

// Base class for every error this library raises on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad scenario file or invalid configuration value. CLI exit code 2.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// An operation was called outside its domain (e.g. gradient inside the
// source support). CLI exit code 3.
class PreconditionError : public Error {
public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

// Numerical failure: non-finite integrand, near-singular kernel,
// under-resolved rule. CLI exit code 3.
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

// A falloff fit was requested with fewer than the minimum usable samples.
class InsufficientDataError : public Error {
public:
  explicit InsufficientDataError(const std::string& what) : Error(what) {}
};

}  // namespace fieldcheck
