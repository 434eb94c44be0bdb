#pragma once

#include <optional>

#include "wcsg/errors.hpp"

/// Kind of the wcsg::Error thrown by `f`, or nullopt when nothing is thrown.
template <typename F>
std::optional<wcsg::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const wcsg::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}
