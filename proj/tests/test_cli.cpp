#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "wcsg/cli/config.hpp"
#include "wcsg/cli/report.hpp"
#include "wcsg/cli/runner.hpp"
#include "wcsg/semigroup.hpp"

using namespace wcsg;
using namespace wcsg::cli;

namespace {

std::string config_error_path(const json& doc, const std::string& suite, const Overrides& o = {}) {
  try {
    parse_config(doc, suite, o);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (const char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("config validation reports field paths") {
  CHECK(config_error_path(json::parse(R"({"space": {"kind": "hardy", "quadrature": {}}})"), "norm-table") ==
        "space.quadrature");
  CHECK(config_error_path(json::parse(R"({"space": {"kind": "hardy"}, "sweep": {"t": [0, "a"]}})"), "norm-table") ==
        "sweep.t[1]");
  CHECK(config_error_path(json::parse(R"({"space": [{"kind": "hardy"}, {"kind": "hardy", "p": 0.5}]})"),
                          "norm-table") == "space[1]");
  CHECK(config_error_path(json::parse(R"({"flow": {"catalog": "spiral"}})"), "semigroup-check") == "flow");
  CHECK(config_error_path(json::parse(R"({"flow": {"generator": "z +"}})"), "reconstruct") == "flow");
  CHECK(config_error_path(json::parse(R"({"suite": "bound-table", "space": {"kind": "hardy"}})"), "norm-table") ==
        "suite");
  CHECK(config_error_path(json::parse(R"({"space": {"kind": "hardy"}})"), "bogus") == "suite");
  CHECK(config_error_path(json::parse(R"({"corpus": "default"})"), "norm-table") == "space");
  CHECK(config_error_path(json::parse(R"({"flow": {"catalog": "dilation"}, "cocycle": {"kind": "integral"}})"),
                          "cocycle-check") == "cocycle.g");
  CHECK(config_error_path(json::parse(R"({"space": {"kind": "hardy"}})"), "norm-table", {-1.0, std::nullopt}) ==
        "--tol");
}

TEST_CASE("defaults and overrides are echoed") {
  const json doc = json::parse(R"({"space": {"kind": "hardy"}, "corpus": "monomials"})");
  const ExperimentConfig plain = parse_config(doc, "norm-table");
  const json e = echo(plain);
  CHECK(e["tolerances"]["norm"] == 1e-8);
  CHECK(e["space"][0]["quad"]["n_theta"] == 256);
  const ExperimentConfig o = parse_config(doc, "norm-table", {1e-3, 16});
  CHECK(o.tol.norm == 1e-3);
  CHECK(o.sweep.spokes == 16);
  CHECK(o.sweep.rings == 4);
  const ExperimentConfig g = parse_config(json::parse(R"({"space": {"kind": "hardy"}, "flow": {"catalog":
      "dilation"}})"), "generator-check", {2e-4, std::nullopt});
  CHECK(g.tol.generator == 2e-4);
  CHECK(g.cocycles.size() == 1);
}

TEST_CASE("norm table of monomials in H^2") {
  const auto cfg = parse_config(json::parse(R"({"space": {"kind": "hardy", "p": 2}, "corpus": "monomials"})"),
                                "norm-table");
  const Report r = run(cfg);
  REQUIRE(r.cases.size() == 9);
  for (const auto& c : r.cases) {
    CHECK(c.verdict == "pass");
    CHECK(std::abs(c.numbers["norm"].get<double>() - 1.0) < 1e-8);
  }
  CHECK(r.all_pass());
}

TEST_CASE("reconstruction against the catalog dilation") {
  const auto cfg = parse_config(json::parse(R"({"flow": {"generator": "-z"},
      "compare": {"catalog": "dilation"}, "sweep": {"t": [0, 0.5, 1]}})"), "reconstruct");
  const Report r = run(cfg);
  REQUIRE(r.cases.size() == 1);
  CHECK(r.cases[0].verdict == "pass");
  CHECK(r.cases[0].numbers["max_deviation"].get<double>() < 1e-6);
}

TEST_CASE("a failing case does not abort the sweep") {
  const auto cfg = parse_config(json::parse(R"({"space": {"kind": "dirichlet"}, "flow": {"catalog": "identity"},
      "cocycle": [{"kind": "integral", "g": "z"}, {"kind": "one"}], "functions": ["z"], "corpus": "none",
      "sweep": {"t": [0.5]}})"), "bound-table");
  const Report r = run(cfg);
  REQUIRE(r.cases.size() == 2);
  CHECK(r.cases[0].verdict == "error");
  CHECK(r.cases[0].numbers["error"].get<std::string>().find("UnsupportedSpaceBound") != std::string::npos);
  CHECK(r.cases[1].verdict == "pass");
  CHECK_FALSE(r.all_pass());
  CHECK(r.summary()["error"] == 1);
}

TEST_CASE("csv layout") {
  Report empty;
  CHECK(render_csv(empty) == "case_id,verdict,t\n");

  const auto cfg = parse_config(json::parse(R"({"flow": {"catalog": "dilation"}, "cocycle": {"kind": "one"},
      "functions": ["z"], "corpus": "none", "sweep": {"t": [0.1, 0.5, 1], "s": [0]}})"), "semigroup-check");
  const Report r = run(cfg);
  const std::string csv = render_csv(r);
  CHECK(count_lines(csv) == 4);
  CHECK(csv.rfind("case_id,verdict,t,", 0) == 0);
  CHECK(csv.find(",0.5,") != std::string::npos);
}

TEST_CASE("json round trip and byte stability") {
  const auto cfg = parse_config(json::parse(R"({"flow": {"catalog": "attracting"},
      "cocycle": [{"kind": "derivative"}, {"kind": "integral", "g": "z/2 - 1"}]})"), "cocycle-check");
  const Report a = run(cfg);
  const Report b = run(cfg);
  CHECK(render_json(a) == render_json(b));
  CHECK(render_json(report_from_json(to_json(a))) == render_json(a));
  CHECK(to_json(a)["meta"]["corpus"] == kTestsetVersion);
  CHECK_FALSE(to_json(a)["meta"].contains("wall_clock_seconds"));
  CHECK(to_json(run(cfg, {true}))["meta"].contains("wall_clock_seconds"));
}

TEST_CASE("emit and load use the file system") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = (dir / "wcsg_test_report.json").string();
  Report r;
  r.cases.push_back({"x", json::object(), {{"value", 1.5}}, "pass"});
  emit(r, Format::Json, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == render_json(r));
  std::filesystem::remove(path);
  CHECK(error_kind([&] { emit(r, Format::Csv, "/nonexistent-dir/out.csv"); }) == ErrorKind::IoError);
  CHECK(error_kind([] { load_config("/nonexistent-dir/cfg.json", "norm-table"); }) == ErrorKind::IoError);

  const auto bad = (dir / "wcsg_bad.json").string();
  std::ofstream(bad) << "{ not json";
  CHECK(error_kind([&] { load_config(bad, "norm-table"); }) == ErrorKind::ConfigError);
  std::filesystem::remove(bad);
}

TEST_CASE("shipped configs parse") {
  for (const auto& entry : std::filesystem::directory_iterator(WCSG_CONFIG_DIR)) {
    std::ifstream in(entry.path());
    const json doc = json::parse(in);
    INFO(entry.path().string());
    CHECK_NOTHROW(parse_config(doc, doc.at("suite").get<std::string>()));
  }
}
