#pragma once

#include "wcsg/cli/config.hpp"
#include "wcsg/cli/report.hpp"

namespace wcsg::cli {

struct RunOptions {
  bool timing = false;  // record wall-clock seconds in meta (breaks byte-stability)
};

inline constexpr const char* kToolVersion = "1.0.0";

/// Dispatches to the configured suite. Errors inside a case are recorded in
/// that case with verdict "error"; the sweep always completes.
Report run(const ExperimentConfig& cfg, const RunOptions& options = {});

}  // namespace wcsg::cli
