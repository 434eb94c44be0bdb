#include <iostream>

#include <CLI11.hpp>

#include "wcsg/cli/config.hpp"
#include "wcsg/cli/report.hpp"
#include "wcsg/cli/runner.hpp"
#include "wcsg/errors.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::string suite_list() {
  std::string out;
  for (const auto& s : wcsg::cli::suite_names()) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted composition semigroup diagnostics"};
  app.set_version_flag("--version", wcsg::cli::kToolVersion);
  std::string suite, config_path, out_path, csv_path;
  std::optional<double> tol;
  std::optional<int> grid;
  bool timing = false;
  app.add_option("suite", suite, "One of: " + suite_list())->required();
  app.add_option("--config", config_path, "Experiment configuration (JSON)")->required();
  app.add_option("--out", out_path, "Write the JSON report here (default: stdout)");
  app.add_option("--csv", csv_path, "Also write a CSV table");
  app.add_option("--tol", tol, "Override the suite's primary verdict tolerance");
  app.add_option("--grid", grid, "Sample-grid density (spokes; rings = max(2, N/4))");
  app.add_flag("--timing", timing, "Record wall-clock seconds in meta (reports stop being byte-stable)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    const auto cfg = wcsg::cli::load_config(config_path, suite, {tol, grid});
    const auto report = wcsg::cli::run(cfg, {timing});
    if (out_path.empty()) std::cout << wcsg::cli::render_json(report);
    else wcsg::cli::emit(report, wcsg::cli::Format::Json, out_path);
    if (!csv_path.empty()) wcsg::cli::emit(report, wcsg::cli::Format::Csv, csv_path);
    const auto summary = report.summary();
    std::cerr << "wcsg " << suite << ": " << summary["pass"] << "/" << summary["cases"] << " cases pass\n";
    return report.all_pass() ? kExitPass : kExitFail;
  } catch (const wcsg::Error& e) {
    std::cerr << "wcsg: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "wcsg: " << e.what() << "\n";
    return kExitConfig;
  }
}
