#pragma once

#include <stdexcept>
#include <string>

namespace polyedge {

/// Base of every error thrown by the library. `kind()` is a short stable tag
/// used by the CLI in its structured error line.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class DegenerateBasisError : public Error {
 public:
  explicit DegenerateBasisError(const std::string& what) : Error("degenerate_basis", what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error("shape", what) {}
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::string iterate, long iteration)
      : Error("divergence", what), iterate_(std::move(iterate)), iteration_(iteration) {}
  const std::string& iterate() const noexcept { return iterate_; }
  long iteration() const noexcept { return iteration_; }

 private:
  std::string iterate_;
  long iteration_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace polyedge
