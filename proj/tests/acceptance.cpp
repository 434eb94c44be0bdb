// Acceptance run: every shipped config is executed twice through the library
// runner, and each criterion is judged from the resulting reports.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "wcsg/cli/config.hpp"
#include "wcsg/cli/report.hpp"
#include "wcsg/cli/runner.hpp"

namespace fs = std::filesystem;
using wcsg::cli::json;
using wcsg::cli::Report;

namespace {

struct Run {
  Report report;
  std::string rendered;
  double seconds = 0.0;
};

std::string suite_of(const fs::path& path) {
  std::ifstream in(path);
  return json::parse(in).at("suite").get<std::string>();
}

Run execute(const fs::path& path) {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = wcsg::cli::load_config(path.string(), suite_of(path));
  Run out;
  out.report = wcsg::cli::run(cfg);
  out.rendered = wcsg::cli::render_json(out.report);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double number(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) return std::nan("");
  return it->get<double>();
}

/// Collects failure reasons for one criterion.
struct Check {
  std::vector<std::string> problems;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok) problems.push_back(why);
  }
  bool ok() const { return problems.empty(); }
};

std::map<std::string, Run> runs;

const Report& report(const std::string& name) { return runs.at(name).report; }

Check norm_table() {
  Check c;
  const auto& r = report("norm-table");
  std::map<std::string, std::set<int>> seen;
  double worst_h = 0, worst_b = 0, worst_d = 0;
  for (const auto& cs : r.cases) {
    const std::string space = cs.inputs.at("space");
    const std::string fn = cs.inputs.at("function");
    const auto& oracle = cs.numbers.at("oracle");
    const double err = std::abs(number(oracle, "error"));
    double tol = 1e-6;
    if (space.rfind("hardy", 0) == 0) {
      tol = 1e-8;
      worst_h = std::max(worst_h, err);
    } else if (space.rfind("bergman", 0) == 0) {
      worst_b = std::max(worst_b, err);
    } else {
      worst_d = std::max(worst_d, err);
    }
    c.require(err < tol, fmt::format("{} error {:.3g}", cs.id, err));
    seen[space].insert(std::stoi(fn.substr(2)));
  }
  for (const char* s : {"hardy(p=1)", "hardy(p=2)", "hardy(p=4)", "bergman(alpha=0,p=2)", "bergman(alpha=1,p=2)",
                        "bergman(alpha=0.5,p=4)", "dirichlet"}) {
    for (int n = 0; n <= 8; ++n) c.require(seen[s].count(n) == 1, fmt::format("missing {} e_{}", s, n));
  }
  const double secs = runs.at("norm-table").seconds;
  c.require(secs < 10.0, fmt::format("runtime {:.1f}s", secs));
  c.detail = fmt::format("hardy {:.2g}, bergman {:.2g}, dirichlet {:.2g}, {:.1f}s", worst_h, worst_b, worst_d, secs);
  return c;
}

Check saks() {
  Check c;
  const auto& r = report("saks");
  double worst = 0, r_max = 0;
  for (const double rad : r.config.at("sweep").at("radii")) r_max = std::max(r_max, rad);
  std::set<std::string> spaces, functions;
  for (const auto& cs : r.cases) {
    const auto& s = cs.numbers.at("saks");
    const double gap = number(s, "gap");
    worst = std::max(worst, gap);
    c.require(gap < 1e-3, fmt::format("{} gap {:.3g}", cs.id, gap));
    spaces.insert(cs.inputs.at("space").get<std::string>());
    functions.insert(cs.inputs.at("function").get<std::string>());
  }
  c.require(r_max >= 1.0 - 1e-4 - 1e-15, fmt::format("largest radius {}", r_max));
  c.require(functions.size() >= 5, "corpus incomplete");
  const double secs = runs.at("saks").seconds;
  c.require(secs < 30.0, fmt::format("runtime {:.1f}s", secs));
  c.detail = fmt::format("{} spaces, worst gap {:.2g}, {:.1f}s", spaces.size(), worst, secs);
  return c;
}

Check law_residuals() {
  Check c;
  double secs = 0, closed = 0, quad = 0;
  int cases = 0;
  for (const char* name : {"semigroup-check", "semigroup-ode", "semigroup-real", "cocycle-check", "cocycle-identity"}) {
    secs += runs.at(name).seconds;
    for (const auto& cs : report(name).cases) {
      ++cases;
      const double tol = number(cs.numbers, "tolerance");
      c.require(tol == 1e-10 || tol == 1e-7, fmt::format("{} tolerance {}", cs.id, tol));
      for (const char* key : {"semiflow_residual", "cocycle_residual", "semigroup_residual"}) {
        if (!cs.numbers.contains(key)) continue;
        const double v = number(cs.numbers, key);
        c.require(v < tol, fmt::format("{} {} {:.3g}", cs.id, key, v));
        (tol == 1e-10 ? closed : quad) = std::max(tol == 1e-10 ? closed : quad, v);
      }
    }
  }
  c.require(secs < 60.0, fmt::format("runtime {:.1f}s", secs));
  c.detail = fmt::format("{} cases, closed {:.2g}, quadrature {:.2g}, {:.1f}s", cases, closed, quad, secs);
  return c;
}

Check ode_round_trip() {
  Check c;
  std::set<std::string> generators;
  double dev = 0, fd = 0;
  for (const char* name : {"reconstruct", "reconstruct-attracting"}) {
    for (const auto& cs : report(name).cases) {
      generators.insert(cs.inputs.at("flow").get<std::string>());
      const double d = number(cs.numbers, "max_deviation");
      const double g = number(cs.numbers, "generator_fd_error");
      dev = std::max(dev, d);
      fd = std::max(fd, g);
      c.require(d < 1e-6, fmt::format("{} deviation {:.3g}", cs.id, d));
      c.require(g < 1e-5, fmt::format("{} generator error {:.3g}", cs.id, g));
      c.require(cs.numbers.at("escaped_points") == 0, cs.id + " escaped");
    }
  }
  c.require(generators.count("G=-z") && generators.count("G=1 - z"), "generators missing");
  c.detail = fmt::format("deviation {:.2g}, generator {:.2g}", dev, fd);
  return c;
}

Check bound_dominance() {
  Check c;
  std::set<std::string> formulas;
  double worst = 0;
  int rows = 0;
  for (const char* name : {"bound-table", "bound-dirichlet", "bound-translation", "bound-sweep"}) {
    for (const auto& cs : report(name).cases) {
      c.require(cs.verdict != "error", cs.id + " errored");
      for (const auto& row : cs.numbers.at("rows")) {
        formulas.insert(row.at("formula").get<std::string>());
        const double ratio = number(row, "empirical_lower") / number(row, "theoretical");
        worst = std::max(worst, ratio);
        ++rows;
        c.require(ratio <= 1.001, fmt::format("{} t={} ratio {:.6f}", cs.id, number(row, "t"), ratio));
      }
    }
  }
  for (const char* f : {"hardy", "bergman", "dirichlet", "bloch", "supweight"})
    c.require(formulas.count(f) == 1, fmt::format("formula {} not exercised", f));

  const auto spot = [&](const char* name, double expected, double tol) {
    const auto& row = report(name).cases.at(0).numbers.at("rows").at(0);
    const double th = number(row, "theoretical");
    c.require(std::abs(th - expected) <= tol, fmt::format("{} theoretical {:.12g}", name, th));
    return th;
  };
  const double hardy = spot("bound-table", std::sqrt(3.0), 1e-9);
  const double dirichlet = spot("bound-dirichlet", 1.30352, 1e-4);

  double k_ratio = 0;
  for (const auto& row : report("bound-translation").cases.at(0).numbers.at("rows")) {
    const double t = number(row, "t");
    const double k = number(row.at("components"), "K");
    k_ratio = std::max(k_ratio, k / std::exp(t));
    c.require(k <= std::exp(t) * 1.001, fmt::format("K at t={} is {:.9g}", t, k));
  }
  c.detail = fmt::format("{} rows, max ratio {:.6f}, hardy {:.10f}, dirichlet {:.6f}, K/e^t {:.6f}", rows, worst, hardy,
                         dirichlet, k_ratio);
  return c;
}

Check generator_formula() {
  Check c;
  int good = 0;
  bool multiplication = false, dilation = false;
  for (const char* name : {"generator-hardy-dilation", "generator-multiplication", "generator-weighted", "generator-real"}) {
    for (const auto& cs : report(name).cases) {
      const double res = number(cs.numbers, "extrapolated_residual");
      const double order = number(cs.numbers, "observed_order");
      const bool ok = res < 1e-4 && order >= 0.9;
      c.require(ok, fmt::format("{} residual {:.3g} order {:.3g}", cs.id, res, order));
      if (!ok) continue;
      ++good;
      const std::string space = cs.inputs.at("space");
      const std::string flow = cs.inputs.at("flow");
      const std::string cocycle = cs.inputs.at("cocycle");
      if (flow == "identity" && cocycle != "one") multiplication = true;
      if (space == "hardy(p=2)" && flow.rfind("dilation", 0) == 0 && cocycle == "one") dilation = true;
    }
  }
  c.require(good >= 6, fmt::format("only {} combinations", good));
  c.require(multiplication, "multiplication semigroup missing");
  c.require(dilation, "Hardy dilation missing");
  c.detail = fmt::format("{} combinations", good);
  return c;
}

Check continuity() {
  Check c;
  const auto& cs = report("continuity-probe").cases.at(0);
  c.require(cs.inputs.at("space") == "sup-holo(v=1)", "space");
  c.require(cs.inputs.at("function") == "exp((z + 1)/(z - 1))", "function");
  std::set<double> ts;
  double co_small = 0, norm_min = INFINITY, cf_max = 0;
  for (const auto& row : cs.numbers.at("rows")) {
    const double t = number(row, "t");
    ts.insert(t);
    const double nr = number(row, "norm_residual");
    const double cf = number(row, "norm_of_Cf");
    norm_min = std::min(norm_min, nr);
    cf_max = std::max(cf_max, cf);
    c.require(nr >= 0.1, fmt::format("norm residual {:.3g} at t={}", nr, t));
    c.require(cf <= 1.0, fmt::format("norm of C(t)f {:.12g} at t={}", cf, t));
    if (t <= 1e-3) {
      c.require(row.at("co_residual").size() == 2, "radii");
      for (const auto& [r, v] : row.at("co_residual").items()) {
        co_small = std::max(co_small, v.get<double>());
        c.require(v.get<double>() < 1e-3, fmt::format("co residual {} {:.3g}", r, v.get<double>()));
      }
    }
  }
  c.require(ts == std::set<double>{1e-1, 1e-2, 1e-3}, "sampled t");
  c.require(cs.numbers.at("gamma_verdict") == true, "gamma verdict");
  c.require(cs.numbers.at("norm_verdict") == false, "norm verdict");
  c.detail = fmt::format("co residual {:.2g}, min norm residual {:.3f}, max norm {:.9f}", co_small, norm_min, cf_max);
  return c;
}

Check admissibility() {
  Check c;
  bool minus_one = false, minus_half = false, coboundary = false;
  double worst = 0;
  for (const auto& cs : report("admissibility").cases) {
    const auto& in = cs.inputs;
    if (in.contains("g") && in.at("g") == "-1") {
      minus_one = cs.numbers.at("admissible") == true && cs.numbers.at("order") == 1;
    } else if (in.contains("g") && in.at("g") == "-0.5") {
      minus_half = cs.numbers.at("admissible") == false;
    } else if (in.contains("cocycle") && in.at("cocycle") == "coboundary(omega=z^2)") {
      coboundary = true;
      for (const auto& row : cs.numbers.at("rows")) {
        if (number(row, "zero_re") != 0.0 || number(row, "zero_im") != 0.0) continue;
        const double t = number(row, "t");
        const double err = std::hypot(number(row, "value_re") - std::exp(-2.0 * t), number(row, "value_im"));
        worst = std::max(worst, err);
        c.require(err <= 1e-9, fmt::format("value at t={} off by {:.3g}", t, err));
      }
    }
  }
  c.require(minus_one, "g=-1 not admissible of order 1");
  c.require(minus_half, "g=-1/2 reported admissible");
  c.require(coboundary, "coboundary case missing");
  c.detail = fmt::format("coboundary error {:.2g}", worst);
  return c;
}

Check growth_fits() {
  Check c;
  int count = 0;
  double omega = -INFINITY, big_m = 0;
  for (const char* name : {"cocycle-check", "cocycle-identity"}) {
    for (const auto& cs : report(name).cases) {
      if (!cs.numbers.contains("dissipative") || cs.numbers.at("dissipative") != true) continue;
      ++count;
      const double w = number(cs.numbers.at("growth"), "omega");
      const double m = number(cs.numbers.at("growth"), "M");
      omega = std::max(omega, w);
      big_m = std::max(big_m, m);
      c.require(w <= 1e-6 && m <= 1.0 + 1e-6, fmt::format("{} omega {:.3g} M {:.9g}", cs.id, w, m));
    }
  }
  c.require(count > 0, "no dissipative cocycles");
  c.detail = fmt::format("{} cocycles, max omega {:.2g}, max M {:.9g}", count, omega, big_m);
  return c;
}

}  // namespace

int main() {
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(WCSG_CONFIG_DIR)) {
    if (entry.path().extension() == ".json") configs.push_back(entry.path());
  }
  std::sort(configs.begin(), configs.end());

  double first_total = 0;
  bool identical = true;
  std::vector<std::string> mismatched;
  try {
    for (const auto& path : configs) {
      Run r = execute(path);
      first_total += r.seconds;
      std::cerr << fmt::format("  {:<28} {:>3} cases  {:6.1f}s\n", path.stem().string(), r.report.cases.size(), r.seconds);
      runs.emplace(path.stem().string(), std::move(r));
    }
    for (const auto& path : configs) {
      if (execute(path).rendered != runs.at(path.stem().string()).rendered) {
        identical = false;
        mismatched.push_back(path.stem().string());
      }
    }
  } catch (const std::exception& e) {
    std::cout << "acceptance aborted: " << e.what() << "\n";
    return 1;
  }

  const auto guarded = [](Check (*fn)()) {
    try {
      return fn();
    } catch (const std::exception& e) {
      Check c;
      c.require(false, std::string("exception: ") + e.what());
      return c;
    }
  };

  std::vector<std::pair<std::string, Check>> results{
      {"monomial norm table", guarded(norm_table)},
      {"saks supremum", guarded(saks)},
      {"law residuals", guarded(law_residuals)},
      {"ode round trip", guarded(ode_round_trip)},
      {"bound dominance", guarded(bound_dominance)},
      {"generator formula", guarded(generator_formula)},
      {"continuity dichotomy", guarded(continuity)},
      {"coboundary admissibility", guarded(admissibility)},
      {"growth fits", guarded(growth_fits)},
  };
  Check det;
  det.require(identical, "reports differ for: " + fmt::format("{}", fmt::join(mismatched, ", ")));
  det.require(first_total < 300.0, fmt::format("full suite took {:.1f}s", first_total));
  det.detail = fmt::format("{} configs, {:.1f}s", configs.size(), first_total);
  results.emplace_back("determinism", det);

  int failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [name, check] = results[i];
    std::cout << fmt::format("criterion {:>2} {:<26} {}  ({})\n", i + 1, name, check.ok() ? "PASS" : "FAIL", check.detail);
    for (const auto& p : check.problems) std::cout << "    " << p << "\n";
    if (!check.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
