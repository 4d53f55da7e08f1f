// Copyright 2026 The guidedopt Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GUIDED_ERRORS_HPP
#define GUIDED_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace guided {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Structural misuse: layout mismatches, contract violations.
class LayoutError : public Error {
 public:
  explicit LayoutError(const std::string& what) : Error(what) {}
};

/// Invalid configuration or out-of-range argument.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Non-finite value encountered during computation. Carries the training
/// step and/or coordinate index when known.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what,
                        std::optional<std::size_t> step = std::nullopt,
                        std::optional<std::size_t> coordinate = std::nullopt)
      : Error(format(what, step, coordinate)), step_(step), coordinate_(coordinate) {}

  std::optional<std::size_t> step() const { return step_; }
  std::optional<std::size_t> coordinate() const { return coordinate_; }

 private:
  static std::string format(const std::string& what, std::optional<std::size_t> step,
                            std::optional<std::size_t> coordinate) {
    std::string msg = what;
    if (step) msg += " (step " + std::to_string(*step) + ")";
    if (coordinate) msg += " (coordinate " + std::to_string(*coordinate) + ")";
    return msg;
  }

  std::optional<std::size_t> step_;
  std::optional<std::size_t> coordinate_;
};

/// Filesystem failure while writing or reading run artifacts.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace guided

#endif  // GUIDED_ERRORS_HPP
