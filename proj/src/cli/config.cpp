#include "wcsg/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "wcsg/errors.hpp"
#include "wcsg/expr.hpp"

namespace wcsg::cli {

namespace {

/// Cursor over one JSON object that remembers which keys were read.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(at(key), "expected a number");
    return v.get<double>();
  }

  int integer(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(at(key), "expected an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(at(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(at(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) throw ConfigError(at(key), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

/// Runs `check`, re-throwing library errors as ConfigError at `path`.
template <typename F>
auto at_path(const std::string& path, F&& check) {
  try {
    return check();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

/// Accepts either one object or an array of objects.
std::vector<std::pair<const json*, std::string>> one_or_many(Section& root, const std::string& key) {
  std::vector<std::pair<const json*, std::string>> out;
  if (!root.has(key)) return out;
  const json& v = root.raw(key);
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(&v[i], root.at(key) + "[" + std::to_string(i) + "]");
  } else {
    out.emplace_back(&v, root.at(key));
  }
  return out;
}

WeightCfg parse_weight(const json& j, const std::string& path) {
  WeightCfg w;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s != "one" && s != "exp-abs") throw ConfigError(path, "weight must be \"one\", \"exp-abs\" or an object");
    w.kind = s;
    return w;
  }
  Section sec(j, path);
  if (sec.has("standard")) {
    w.kind = "standard";
    w.alpha = sec.number("standard", 0.0);
  } else if (sec.has("expr")) {
    w.kind = "expr";
    w.expr = sec.text("expr", "");
  } else {
    throw ConfigError(path, "weight object needs \"standard\" or \"expr\"");
  }
  sec.finish();
  return w;
}

QuadPolicy parse_quad(const json& j, const std::string& path) {
  Section sec(j, path);
  QuadPolicy q;
  q.n_theta = sec.integer("n_theta", q.n_theta);
  q.n_radial = sec.integer("n_radial", q.n_radial);
  q.r_cap = sec.number("r_cap", q.r_cap);
  q.tol = sec.number("tol", q.tol);
  sec.finish();
  at_path(path, [&] {
    q.validate();
    return 0;
  });
  return q;
}

SpaceCfg parse_space(const json& j, const std::string& path) {
  Section sec(j, path);
  SpaceCfg s;
  s.kind = sec.text("kind", "");
  if (s.kind.empty()) throw ConfigError(sec.at("kind"), "missing space kind");
  s.p = sec.number("p", s.p);
  s.alpha = sec.number("alpha", s.alpha);
  if (sec.has("weight")) s.weight = parse_weight(sec.raw("weight"), sec.at("weight"));
  if (sec.has("quad")) s.quad = parse_quad(sec.raw("quad"), sec.at("quad"));
  s.real_extent = sec.number("real_extent", s.real_extent);
  sec.finish();
  at_path(path, [&] { return build_space(s); });
  return s;
}

OdeCfg parse_ode(const json& j, const std::string& path) {
  Section sec(j, path);
  OdeCfg o;
  o.h0 = sec.number("h0", o.h0);
  o.tol_step = sec.number("tol_step", o.tol_step);
  o.exit_margin = sec.number("exit_margin", o.exit_margin);
  sec.finish();
  at_path(path, [&] {
    o.validate();
    return 0;
  });
  return o;
}

FlowCfg parse_flow(const json& j, const std::string& path) {
  Section sec(j, path);
  FlowCfg f;
  f.catalog = sec.text("catalog", "");
  f.generator = sec.text("generator", "");
  if (f.catalog.empty() == f.generator.empty()) {
    throw ConfigError(path, "give exactly one of \"catalog\" or \"generator\"");
  }
  if (sec.has("params")) {
    const json& p = sec.raw("params");
    if (!p.is_object()) throw ConfigError(sec.at("params"), "expected an object");
    for (const auto& [key, value] : p.items()) {
      if (!value.is_number()) throw ConfigError(sec.at("params") + "." + key, "expected a number");
      f.params[key] = value.get<double>();
    }
  }
  f.domain = sec.text("domain", f.domain);
  if (f.domain != "disc" && f.domain != "real") throw ConfigError(sec.at("domain"), "domain must be disc or real");
  if (sec.has("ode")) f.ode = parse_ode(sec.raw("ode"), sec.at("ode"));
  if (!f.catalog.empty() && (sec.has("domain") || sec.has("ode"))) {
    throw ConfigError(path, "domain and ode apply to generator flows only");
  }
  if (!f.generator.empty() && !f.params.empty()) throw ConfigError(sec.at("params"), "params apply to catalog flows only");
  sec.finish();
  at_path(path, [&] { return build_flow(f); });
  return f;
}

CocycleCfg parse_cocycle(const json& j, const std::string& path) {
  Section sec(j, path);
  CocycleCfg c;
  c.kind = sec.text("kind", "");
  static const std::set<std::string> kinds{"one", "derivative", "integral", "exponential", "coboundary"};
  if (!kinds.count(c.kind)) {
    throw ConfigError(sec.at("kind"), "kind must be one, derivative, integral, exponential or coboundary");
  }
  c.g = sec.text("g", "");
  c.omega = sec.text("omega", "");
  c.zero_guard = sec.number("zero_guard", c.zero_guard);
  if (sec.has("zeros")) {
    const json& zs = sec.raw("zeros");
    if (!zs.is_array()) throw ConfigError(sec.at("zeros"), "expected an array");
    for (std::size_t i = 0; i < zs.size(); ++i) {
      Section z(zs[i], sec.at("zeros") + "[" + std::to_string(i) + "]");
      DeclaredZero d;
      d.point = {z.number("re", 0.0), z.number("im", 0.0)};
      d.order = z.integer("order", 1);
      z.finish();
      c.zeros.push_back(d);
    }
  }
  const bool needs_g = c.kind == "integral" || c.kind == "exponential";
  if (needs_g && c.g.empty()) throw ConfigError(sec.at("g"), "required for " + c.kind + " cocycles");
  if (!needs_g && !c.g.empty()) throw ConfigError(sec.at("g"), "only integral and exponential cocycles take g");
  if (c.kind == "coboundary" && c.omega.empty()) throw ConfigError(sec.at("omega"), "required for coboundaries");
  if (c.kind != "coboundary" && (!c.omega.empty() || !c.zeros.empty())) {
    throw ConfigError(path, "omega and zeros apply to coboundaries only");
  }
  if (!c.g.empty()) at_path(sec.at("g"), [&] { return expr::parse(c.g); });
  if (!c.omega.empty()) at_path(sec.at("omega"), [&] { return expr::parse(c.omega); });
  sec.finish();
  return c;
}

FunctionCfg parse_function(const json& j, const std::string& path) {
  FunctionCfg f;
  if (j.is_string()) {
    f.expr = j.get<std::string>();
  } else {
    Section sec(j, path);
    f.expr = sec.text("expr", "");
    if (sec.has("expected")) f.expected = sec.number("expected", 0.0);
    if (sec.has("admissible")) f.admissible = sec.boolean("admissible", false);
    if (sec.has("order")) f.order = sec.integer("order", 0);
    sec.finish();
  }
  if (f.expr.empty()) throw ConfigError(path, "missing expression");
  at_path(path, [&] { return expr::parse(f.expr); });
  return f;
}

Tolerances parse_tolerances(const json& j, const std::string& path) {
  Section sec(j, path);
  Tolerances t;
  const auto read = [&](const char* key, double& field) {
    field = sec.number(key, field);
    if (!(field > 0.0)) throw ConfigError(sec.at(key), "tolerances must be positive");
  };
  read("norm", t.norm);
  read("law", t.law);
  read("law_quadrature", t.law_quadrature);
  read("bound_slack", t.bound_slack);
  read("generator", t.generator);
  read("order", t.order);
  read("conv", t.conv);
  read("norm_cap", t.norm_cap);
  read("reconstruct", t.reconstruct);
  read("generator_fd", t.generator_fd);
  read("mdot0", t.mdot0);
  read("growth", t.growth);
  read("admissibility", t.admissibility);
  read("saks_gap", t.saks_gap);
  read("coboundary", t.coboundary);
  sec.finish();
  return t;
}

SweepCfg default_sweep(const std::string& suite) {
  SweepCfg s;
  if (suite == "semigroup-check" || suite == "cocycle-check") {
    s.t = s.s = {0.0, 0.1, 0.5, 1.0};
    s.steps = {1e-2, 5e-3, 2.5e-3};
  } else if (suite == "bound-table") {
    s.t = {0.1, 0.5, 1.0};
  } else if (suite == "generator-check") {
    s.steps = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    s.grid_radius = 0.9;
  } else if (suite == "reconstruct") {
    s.t = {0.0, 0.25, 0.5, 0.75, 1.0};
    s.steps = {1e-2, 5e-3, 2.5e-3};
    s.grid_radius = 0.9;
  } else if (suite == "continuity-probe") {
    s.t = {1e-1, 1e-2, 1e-3};
    s.radii = {0.5, 0.9};
  } else if (suite == "admissibility") {
    s.t = {0.5, 1.0};
  }
  return s;
}

SweepCfg parse_sweep(const json& j, const std::string& path, SweepCfg s) {
  Section sec(j, path);
  s.t = sec.numbers("t", s.t);
  s.s = sec.numbers("s", s.s);
  s.radii = sec.numbers("radii", s.radii);
  s.steps = sec.numbers("steps", s.steps);
  s.norm_ladder = sec.boolean("norm_ladder", s.norm_ladder);
  if (sec.has("grid")) {
    Section g(sec.raw("grid"), sec.at("grid"));
    s.grid_radius = g.number("radius", s.grid_radius);
    s.rings = g.integer("rings", s.rings);
    s.spokes = g.integer("spokes", s.spokes);
    g.finish();
  }
  sec.finish();
  for (const double t : s.t) {
    if (!(t >= 0.0)) throw ConfigError(sec.at("t"), "times must be >= 0");
  }
  for (const double t : s.s) {
    if (!(t >= 0.0)) throw ConfigError(sec.at("s"), "times must be >= 0");
  }
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    if (!(s.steps[i] > 0.0) || (i > 0 && !(s.steps[i] < s.steps[i - 1]))) {
      throw ConfigError(sec.at("steps"), "steps must be positive and decreasing");
    }
  }
  if (!(s.grid_radius > 0.0) || s.rings < 1 || s.spokes < 1) {
    throw ConfigError(sec.at("grid"), "grid radius, rings and spokes must be positive");
  }
  return s;
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, what);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"norm-table",    "semigroup-check", "cocycle-check",
                                              "bound-table",   "generator-check", "reconstruct",
                                              "continuity-probe", "admissibility"};
  return names;
}

SpaceSpec build_space(const SpaceCfg& cfg) {
  Weight w = Weight::one();
  if (cfg.weight.kind == "standard") w = Weight::standard(cfg.weight.alpha);
  else if (cfg.weight.kind == "exp-abs") w = Weight::exp_abs();
  else if (cfg.weight.kind == "expr") {
    const Domain d = cfg.kind == "sup-cont" ? Domain::real_line() : Domain::unit_disc();
    const HoloFn f = expr::compile(cfg.weight.expr, d);
    w = Weight{"|" + f.label + "|", [f](Complex z) { return std::abs(f(z)); }, std::nullopt};
  }
  SpaceSpec s;
  if (cfg.kind == "hardy") s = SpaceSpec::hardy(cfg.p);
  else if (cfg.kind == "bergman") s = SpaceSpec::bergman(cfg.alpha, cfg.p);
  else if (cfg.kind == "dirichlet") s = SpaceSpec::dirichlet();
  else if (cfg.kind == "bloch") s = SpaceSpec::bloch(w);
  else if (cfg.kind == "sup-holo") s = SpaceSpec::sup_holo(w);
  else if (cfg.kind == "sup-cont") s = SpaceSpec::sup_cont(w);
  else fail(ErrorKind::InvalidParam, "unknown space kind '" + cfg.kind + "'");
  s.policy = cfg.quad;
  s.real_extent = cfg.real_extent;
  s.validate();
  return s;
}

Semiflow build_flow(const FlowCfg& cfg) {
  if (!cfg.catalog.empty()) return make_catalog_semiflow(cfg.catalog, cfg.params);
  const Domain d = cfg.domain == "real" ? Domain::real_line() : Domain::unit_disc();
  return semiflow_from_generator(expr::compile(cfg.generator, d), cfg.ode);
}

Semicocycle build_cocycle(const CocycleCfg& cfg, const Semiflow& phi, const QuadPolicy& policy) {
  if (cfg.kind == "one") return unit_cocycle(phi.domain);
  if (cfg.kind == "derivative") return derivative_cocycle(phi, policy);
  if (cfg.kind == "integral") return cocycle_from_g(expr::compile(cfg.g, phi.domain), phi, policy);
  if (cfg.kind == "exponential") return exponential_cocycle(expr::compile(cfg.g, phi.domain));
  CoboundaryCfg cb;
  cb.zero_guard = cfg.zero_guard;
  return coboundary(expr::compile(cfg.omega, phi.domain), phi, cfg.zeros, cb, policy);
}

ExperimentConfig parse_config(const json& doc, const std::string& suite, const Overrides& overrides) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw ConfigError("suite", "unknown suite '" + suite + "'");
  }
  Section root(doc, "");
  ExperimentConfig cfg;
  cfg.suite = suite;
  if (root.has("suite")) {
    const std::string declared = root.text("suite", "");
    require(declared == suite, "suite", "config is for suite '" + declared + "', not '" + suite + "'");
  }
  for (const auto& [j, path] : one_or_many(root, "space")) cfg.spaces.push_back(parse_space(*j, path));
  for (const auto& [j, path] : one_or_many(root, "flow")) cfg.flows.push_back(parse_flow(*j, path));
  for (const auto& [j, path] : one_or_many(root, "cocycle")) cfg.cocycles.push_back(parse_cocycle(*j, path));
  if (root.has("functions")) {
    const json& fs = root.raw("functions");
    require(fs.is_array(), "functions", "expected an array");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      cfg.functions.push_back(parse_function(fs[i], "functions[" + std::to_string(i) + "]"));
    }
  }
  cfg.corpus = root.text("corpus", cfg.functions.empty() ? "default" : "none");
  require(cfg.corpus == "default" || cfg.corpus == "monomials" || cfg.corpus == "none", "corpus",
          "corpus must be default, monomials or none");
  cfg.sweep = default_sweep(suite);
  if (root.has("sweep")) cfg.sweep = parse_sweep(root.raw("sweep"), "sweep", cfg.sweep);
  if (root.has("tolerances")) cfg.tol = parse_tolerances(root.raw("tolerances"), "tolerances");
  if (root.has("expect")) {
    const json& e = root.raw("expect");
    if (suite == "continuity-probe") {
      Section sec(e, "expect");
      if (sec.has("gamma")) cfg.continuity.gamma = sec.boolean("gamma", false);
      if (sec.has("norm")) cfg.continuity.norm = sec.boolean("norm", false);
      if (sec.has("min_norm_residual")) cfg.continuity.min_norm_residual = sec.number("min_norm_residual", 0.0);
      if (sec.has("max_norm_of_Cf")) cfg.continuity.max_norm_of_Cf = sec.number("max_norm_of_Cf", 0.0);
      sec.finish();
    } else if (suite == "bound-table") {
      require(e.is_array(), "expect", "expected an array of {t, theoretical, tol}");
      for (std::size_t i = 0; i < e.size(); ++i) {
        Section sec(e[i], "expect[" + std::to_string(i) + "]");
        BoundExpect b;
        b.t = sec.number("t", 0.0);
        b.theoretical = sec.number("theoretical", 0.0);
        b.tol = sec.number("tol", b.tol);
        sec.finish();
        cfg.bounds.push_back(b);
      }
    } else {
      throw ConfigError("expect", "suite " + suite + " takes no expectations");
    }
  }
  if (root.has("compare")) {
    require(suite == "reconstruct", "compare", "only the reconstruct suite compares flows");
    cfg.compare = parse_flow(root.raw("compare"), "compare");
  }
  root.finish();

  if (overrides.grid) {
    require(*overrides.grid >= 1, "--grid", "grid density must be positive");
    cfg.sweep.spokes = *overrides.grid;
    cfg.sweep.rings = std::max(2, *overrides.grid / 4);
  }
  if (overrides.tol) {
    require(*overrides.tol > 0.0, "--tol", "tolerance must be positive");
    const double x = *overrides.tol;
    if (suite == "norm-table") cfg.tol.norm = x;
    else if (suite == "semigroup-check" || suite == "cocycle-check") cfg.tol.law = x;
    else if (suite == "bound-table") cfg.tol.bound_slack = x;
    else if (suite == "generator-check") cfg.tol.generator = x;
    else if (suite == "reconstruct") cfg.tol.reconstruct = x;
    else if (suite == "continuity-probe") cfg.tol.conv = x;
    else cfg.tol.admissibility = x;
  }

  // Sections each suite cannot do without.
  const bool needs_space = suite == "norm-table" || suite == "bound-table" || suite == "generator-check" ||
                           suite == "continuity-probe";
  const bool needs_flow = suite != "norm-table";
  require(!needs_space || !cfg.spaces.empty(), "space", "required by " + suite);
  require(!needs_flow || !cfg.flows.empty(), "flow", "required by " + suite);
  if (suite == "reconstruct") {
    for (std::size_t i = 0; i < cfg.flows.size(); ++i) {
      require(!cfg.flows[i].generator.empty(), "flow[" + std::to_string(i) + "]",
              "reconstruct integrates a generator expression");
    }
  }
  if (suite == "admissibility") {
    require(!cfg.functions.empty() || !cfg.cocycles.empty(), "functions",
            "admissibility needs cocycle rates g as functions or coboundary cocycles");
    for (std::size_t i = 0; i < cfg.cocycles.size(); ++i) {
      require(cfg.cocycles[i].kind == "coboundary", "cocycle[" + std::to_string(i) + "]",
              "admissibility evaluates coboundaries only");
    }
  }
  if (cfg.cocycles.empty() && suite != "norm-table" && suite != "reconstruct" && suite != "admissibility") {
    cfg.cocycles.push_back(CocycleCfg{});
  }
  if (suite == "continuity-probe") {
    for (std::size_t i = 1; i < cfg.sweep.t.size(); ++i) {
      require(cfg.sweep.t[i] < cfg.sweep.t[i - 1], "sweep.t", "probe times must decrease");
    }
    require(!cfg.sweep.t.empty() && !cfg.sweep.radii.empty(), "sweep", "probe needs times and radii");
  }
  if (suite == "generator-check" || suite == "cocycle-check" || suite == "reconstruct") {
    require(cfg.sweep.steps.size() >= 2, "sweep.steps", "need at least two difference steps");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, const std::string& suite, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc, suite, overrides);
}

json echo(const ExperimentConfig& cfg) {
  json j;
  j["suite"] = cfg.suite;
  j["space"] = json::array();
  for (const auto& s : cfg.spaces) {
    json w;
    if (s.weight.kind == "standard") w = {{"standard", s.weight.alpha}};
    else if (s.weight.kind == "expr") w = {{"expr", s.weight.expr}};
    else w = s.weight.kind;
    j["space"].push_back({{"kind", s.kind},
                          {"p", s.p},
                          {"alpha", s.alpha},
                          {"weight", w},
                          {"real_extent", s.real_extent},
                          {"quad",
                           {{"n_theta", s.quad.n_theta},
                            {"n_radial", s.quad.n_radial},
                            {"r_cap", s.quad.r_cap},
                            {"tol", s.quad.tol}}}});
  }
  const auto flow_json = [](const FlowCfg& f) {
    if (!f.catalog.empty()) return json{{"catalog", f.catalog}, {"params", f.params}};
    return json{{"generator", f.generator},
                {"domain", f.domain},
                {"ode", {{"h0", f.ode.h0}, {"tol_step", f.ode.tol_step}, {"exit_margin", f.ode.exit_margin}}}};
  };
  j["flow"] = json::array();
  for (const auto& f : cfg.flows) j["flow"].push_back(flow_json(f));
  j["cocycle"] = json::array();
  for (const auto& c : cfg.cocycles) {
    json cj{{"kind", c.kind}};
    if (!c.g.empty()) cj["g"] = c.g;
    if (c.kind == "coboundary") {
      cj["omega"] = c.omega;
      cj["zero_guard"] = c.zero_guard;
      cj["zeros"] = json::array();
      for (const auto& z : c.zeros) cj["zeros"].push_back({{"re", z.point.real()}, {"im", z.point.imag()}, {"order", z.order}});
    }
    j["cocycle"].push_back(cj);
  }
  j["functions"] = json::array();
  for (const auto& f : cfg.functions) {
    json fj{{"expr", f.expr}};
    if (f.expected) fj["expected"] = *f.expected;
    if (f.admissible) fj["admissible"] = *f.admissible;
    if (f.order) fj["order"] = *f.order;
    j["functions"].push_back(fj);
  }
  j["corpus"] = cfg.corpus;
  j["sweep"] = {{"t", cfg.sweep.t},
                {"s", cfg.sweep.s},
                {"radii", cfg.sweep.radii},
                {"steps", cfg.sweep.steps},
                {"norm_ladder", cfg.sweep.norm_ladder},
                {"grid", {{"radius", cfg.sweep.grid_radius}, {"rings", cfg.sweep.rings}, {"spokes", cfg.sweep.spokes}}}};
  const Tolerances& t = cfg.tol;
  j["tolerances"] = {{"norm", t.norm},
                     {"law", t.law},
                     {"law_quadrature", t.law_quadrature},
                     {"bound_slack", t.bound_slack},
                     {"generator", t.generator},
                     {"order", t.order},
                     {"conv", t.conv},
                     {"norm_cap", t.norm_cap},
                     {"reconstruct", t.reconstruct},
                     {"generator_fd", t.generator_fd},
                     {"mdot0", t.mdot0},
                     {"growth", t.growth},
                     {"admissibility", t.admissibility},
                     {"saks_gap", t.saks_gap},
                     {"coboundary", t.coboundary}};
  if (cfg.suite == "continuity-probe") {
    json e = json::object();
    if (cfg.continuity.gamma) e["gamma"] = *cfg.continuity.gamma;
    if (cfg.continuity.norm) e["norm"] = *cfg.continuity.norm;
    if (cfg.continuity.min_norm_residual) e["min_norm_residual"] = *cfg.continuity.min_norm_residual;
    if (cfg.continuity.max_norm_of_Cf) e["max_norm_of_Cf"] = *cfg.continuity.max_norm_of_Cf;
    j["expect"] = e;
  }
  if (cfg.suite == "bound-table") {
    j["expect"] = json::array();
    for (const auto& b : cfg.bounds) j["expect"].push_back({{"t", b.t}, {"theoretical", b.theoretical}, {"tol", b.tol}});
  }
  if (cfg.compare) j["compare"] = flow_json(*cfg.compare);
  return j;
}

}  // namespace wcsg::cli
