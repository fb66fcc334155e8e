#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace mild {

/// Element of the discretized state space X.
using StateField = Eigen::VectorXd;

/// Point of the control space R^m.
using ControlValue = Eigen::VectorXd;

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  Misaligned,
  Divergence,
  MissingField,
  Parse,
  Io,
};

/// Base exception for the library; the kind maps onto C API status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

inline void require_dim(Eigen::Index actual, Eigen::Index expected, const char* what) {
  if (actual != expected) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": expected dimension " +
                                                  std::to_string(expected) + ", got " +
                                                  std::to_string(actual));
  }
}

}  // namespace mild
