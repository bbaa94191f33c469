#pragma once

#include <stdexcept>
#include <string>

namespace exfl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A screened or bare denominator sits on a material resonance.
class ResonantDenominator : public Error {
 public:
  using Error::Error;
};

/// Laser tuned onto the cavity mode (|Δ_c| below the guard).
class ResonantCavity : public Error {
 public:
  using Error::Error;
};

/// The exciton condition has no root inside the search bracket.
class NoResonance : public Error {
 public:
  using Error::Error;
};

/// A spectrum has no qualifying local maximum.
class NoPeak : public Error {
 public:
  using Error::Error;
};

/// Dense solve failed (matrix numerically singular).
class SingularSolve : public Error {
 public:
  using Error::Error;
};

/// Bad model or run configuration. Carries the offending key and line (0 when
/// the value did not come from a file).
class ConfigError : public Error {
 public:
  ConfigError(std::string key, int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + key + ": " + what
                       : key + ": " + what),
        key_(std::move(key)),
        line_(line) {}

  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

}  // namespace exfl
