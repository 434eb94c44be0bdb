#include "wcsg/errors.hpp"

namespace wcsg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainExit: return "DomainExit";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::UnknownCatalogEntry: return "UnknownCatalogEntry";
    case ErrorKind::InvalidParam: return "InvalidParam";
    case ErrorKind::EscapedDomain: return "EscapedDomain";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::ZeroNotFixed: return "ZeroNotFixed";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::UnboundedSignal: return "UnboundedSignal";
    case ErrorKind::UnsupportedSpaceBound: return "UnsupportedSpaceBound";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

EscapedDomainError::EscapedDomainError(double tau, const std::string& message)
    : Error(ErrorKind::EscapedDomain, message), tau_(tau) {}

ConfigError::ConfigError(std::string path, const std::string& message)
    : Error(ErrorKind::ConfigError, path + ": " + message), path_(std::move(path)) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace wcsg
