#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wcsg {

enum class ErrorKind {
  DomainExit,
  NonConvergent,
  Unbounded,
  UnknownCatalogEntry,
  InvalidParam,
  EscapedDomain,
  StepUnderflow,
  ZeroNotFixed,
  OrderMismatch,
  Degenerate,
  UnboundedSignal,
  UnsupportedSpaceBound,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Base of every error raised by the library. The kind is stable and is what
/// reports and tests key on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A trajectory of an ODE-reconstructed semiflow reached the boundary layer of
/// its domain. `tau()` is the last time at which the trajectory was still safe.
class EscapedDomainError : public Error {
 public:
  EscapedDomainError(double tau, const std::string& message);

  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

/// Configuration problem, tagged with a JSON-pointer style field path.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message);

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace wcsg
