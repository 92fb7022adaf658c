#pragma once

#include <stdexcept>
#include <string>

namespace hartree {

/// Invalid configuration: bad grid sizes, out-of-range parameters.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation was called with inputs violating its precondition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// The radial box or resolution cannot represent the requested levels.
class GridTooSmall : public std::runtime_error {
 public:
  explicit GridTooSmall(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative method failed (LAPACK error, solver breakdown).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
[[noreturn]] void throw_config(const std::string& what);
[[noreturn]] void throw_precondition(const std::string& what);
}  // namespace detail

}  // namespace hartree
