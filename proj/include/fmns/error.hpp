#pragma once

#include <stdexcept>
#include <string>

namespace fmns {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong array lengths, non-finite samples, bad ranges.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A configuration document could not be turned into a RunConfig.
/// `path()` names the offending key (e.g. "params.mu").
class ConfigError : public StructuralError {
 public:
  ConfigError(std::string path, const std::string& what)
      : StructuralError(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// J <= 0 (or a nonpositive diffusion coefficient) reached a formula that divides by it.
class DegenerateJacobianError : public Error {
 public:
  using Error::Error;
};

/// Linear solve breakdown or a non-finite value produced by arithmetic.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// A run could not continue (step size underflow, repeated rejection, ...).
class RunAborted : public Error {
 public:
  using Error::Error;
};

}  // namespace fmns
