#include "wcsg/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "wcsg/errors.hpp"
#include "wcsg/expr.hpp"
#include "wcsg/semigroup.hpp"

namespace wcsg::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Allowance when deciding whether sup Re g is nonpositive; rates obtained
/// from a numerically differentiated generator carry errors near 1e-10.
constexpr double kSignSlack = 1e-8;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string flow_name(const FlowCfg& f) {
  if (f.catalog.empty()) return "G=" + expr::print(expr::parse(f.generator));
  std::string out = f.catalog;
  if (!f.params.empty()) {
    out += "(";
    bool first = true;
    for (const auto& [k, v] : f.params) {
      out += (first ? "" : ",") + k + "=" + fmt(v);
      first = false;
    }
    out += ")";
  }
  return out;
}

std::string cocycle_name(const CocycleCfg& c) {
  if (c.kind == "integral" || c.kind == "exponential") return c.kind + "(g=" + expr::print(expr::parse(c.g)) + ")";
  if (c.kind == "coboundary") return "coboundary(omega=" + expr::print(expr::parse(c.omega)) + ")";
  return c.kind;
}

struct FnEntry {
  std::string label;
  const FunctionCfg* cfg = nullptr;
  std::optional<HoloFn> builtin;
  std::optional<int> degree;  // corpus monomial e_n
};

std::vector<FnEntry> function_entries(const ExperimentConfig& cfg, const Domain& domain) {
  std::vector<FnEntry> out;
  for (const auto& f : cfg.functions) out.push_back({expr::print(expr::parse(f.expr)), &f, std::nullopt, std::nullopt});
  if (cfg.corpus == "monomials") {
    for (int n = 0; n <= 8; ++n) {
      HoloFn e = fns::monomial(n, domain);
      out.push_back({e.label, nullptr, e, n});
    }
  } else if (cfg.corpus == "default") {
    const auto set = default_testset(domain);
    for (std::size_t i = 0; i < set.size(); ++i) {
      std::optional<int> degree;
      if (!domain.is_real() && i <= 8) degree = static_cast<int>(i);
      out.push_back({set[i].label, nullptr, set[i], degree});
    }
  }
  return out;
}

HoloFn materialize(const FnEntry& e, const Domain& domain) {
  if (e.builtin) return *e.builtin;
  return expr::compile(e.cfg->expr, domain);
}

std::vector<HoloFn> testset(const ExperimentConfig& cfg, const Domain& domain) {
  std::vector<HoloFn> out;
  for (const auto& e : function_entries(cfg, domain)) out.push_back(materialize(e, domain));
  return out;
}

std::vector<Complex> config_grid(const ExperimentConfig& cfg, const Domain& domain) {
  return sample_grid(domain, cfg.sweep.grid_radius, cfg.sweep.rings, cfg.sweep.spokes);
}

SpaceSpec default_space(const Domain& domain) {
  return domain.is_real() ? SpaceSpec::sup_cont(Weight::exp_abs()) : SpaceSpec::hardy(2.0);
}

QuadPolicy policy_of(const ExperimentConfig& cfg) {
  return cfg.spaces.empty() ? QuadPolicy{} : cfg.spaces.front().quad;
}

/// Runs one case, converting library errors into an "error" verdict.
CaseRecord run_case(std::string id, json inputs, const std::function<bool(json&)>& body) {
  CaseRecord c;
  c.id = std::move(id);
  c.inputs = std::move(inputs);
  try {
    c.verdict = body(c.numbers) ? "pass" : "fail";
  } catch (const std::exception& e) {
    c.verdict = "error";
    c.numbers["error"] = e.what();
  }
  return c;
}

bool quadrature_built(const Semiflow& phi, const Semicocycle& m) {
  if (std::holds_alternative<OdeOrigin>(phi.origin)) return true;
  if (std::holds_alternative<IntegralOrigin>(m.origin)) return true;
  return std::holds_alternative<DerivativeOrigin>(m.origin) && !phi.spatial_derivative;
}

/// Closed-form oracles for the monomial corpus: (quantity, expected, observed).
std::optional<std::tuple<std::string, double, double>> monomial_oracle(const SpaceSpec& s, int n, double value) {
  switch (s.kind) {
    case SpaceKind::Hardy: return std::make_tuple("norm", 1.0, value);
    case SpaceKind::Bergman: {
      const double expected = (s.alpha + 1.0) * std::beta(n * s.p / 2.0 + 1.0, s.alpha + 1.0);
      return std::make_tuple("norm^p", expected, std::pow(value, s.p));
    }
    case SpaceKind::Dirichlet: return std::make_tuple("norm^2", n == 0 ? 1.0 : double(n), value * value);
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------- suites

void norm_table(const ExperimentConfig& cfg, Report& r) {
  for (const auto& scfg : cfg.spaces) {
    const SpaceSpec space = build_space(scfg);
    for (const auto& e : function_entries(cfg, space.domain)) {
      json inputs{{"space", space.describe()}, {"function", e.label}};
      r.cases.push_back(run_case("norm-table/" + space.describe() + "/" + e.label, inputs, [&](json& n) {
        const HoloFn f = materialize(e, space.domain);
        const NormDetail d = norm_detail(space, f);
        n["norm"] = num(d.value);
        n["truncated"] = num(d.truncated);
        n["truncated_inner"] = num(d.truncated_inner);
        n["truncation_radius"] = d.truncation_radius;
        n["refinement_delta"] = num(d.refinement_delta);
        if (space.domain.is_real()) n["real_extent"] = d.real_extent;
        bool ok = std::isfinite(d.value);
        std::optional<std::tuple<std::string, double, double>> oracle;
        if (e.cfg && e.cfg->expected) oracle = std::make_tuple("norm", *e.cfg->expected, d.value);
        else if (e.degree) oracle = monomial_oracle(space, *e.degree, d.value);
        if (oracle) {
          const auto& [quantity, expected, observed] = *oracle;
          const double err = std::abs(observed - expected);
          n["oracle"] = {{"quantity", quantity}, {"expected", expected}, {"observed", observed}, {"error", err}};
          ok = ok && err <= cfg.tol.norm;
        }
        if (!cfg.sweep.radii.empty()) {
          const SaksCheck s = saks_sup_check(space, f, cfg.sweep.radii, cfg.tol.saks_gap);
          n["saks"] = {{"gap", s.gap}, {"max_seminorm", s.max_seminorm}, {"monotone", s.monotone}, {"pass", s.pass}};
          json rows = json::array();
          for (std::size_t i = 0; i < s.radii.size(); ++i) rows.push_back({{"radius", s.radii[i]}, {"seminorm", s.seminorms[i]}});
          n["rows"] = rows;
          ok = ok && s.pass;
        }
        return ok;
      }));
    }
  }
}

void semigroup_check(const ExperimentConfig& cfg, Report& r) {
  const QuadPolicy policy = policy_of(cfg);
  const auto& ss = cfg.sweep.s.empty() ? cfg.sweep.t : cfg.sweep.s;
  for (const auto& fcfg : cfg.flows) {
    for (const auto& ccfg : cfg.cocycles) {
      json inputs{{"flow", flow_name(fcfg)}, {"cocycle", cocycle_name(ccfg)}};
      r.cases.push_back(run_case("semigroup-check/" + flow_name(fcfg) + "/" + cocycle_name(ccfg), inputs, [&](json& n) {
        const Semiflow phi = build_flow(fcfg);
        const Semicocycle m = build_cocycle(ccfg, phi, policy);
        const WcSemigroup sg{phi, m, cfg.spaces.empty() ? default_space(phi.domain) : build_space(cfg.spaces.front())};
        const auto grid = config_grid(cfg, phi.domain);
        const auto fs = testset(cfg, phi.domain);
        std::vector<double> times = cfg.sweep.t;
        times.insert(times.end(), ss.begin(), ss.end());
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
        const double tol = quadrature_built(phi, m) ? cfg.tol.law_quadrature : cfg.tol.law;
        const double flow_res = semiflow_law_residual(phi, times, grid);
        const double co_res = cocycle_law_residual(m, phi, times, grid);
        double sg_res = 0.0;
        json rows = json::array();
        for (const double t : cfg.sweep.t) {
          double worst = 0.0;
          for (const double s : ss) worst = std::max(worst, semigroup_residual(sg, t, s, grid, fs));
          sg_res = std::max(sg_res, worst);
          rows.push_back({{"t", t}, {"semigroup_residual", num(worst)}});
        }
        n["tolerance"] = tol;
        n["semiflow_residual"] = num(flow_res);
        n["cocycle_residual"] = num(co_res);
        n["semigroup_residual"] = num(sg_res);
        n["rows"] = rows;
        return flow_res < tol && co_res < tol && sg_res < tol;
      }));
    }
  }
}

void cocycle_check(const ExperimentConfig& cfg, Report& r) {
  const QuadPolicy policy = policy_of(cfg);
  const auto& ss = cfg.sweep.s.empty() ? cfg.sweep.t : cfg.sweep.s;
  for (const auto& fcfg : cfg.flows) {
    for (const auto& ccfg : cfg.cocycles) {
      json inputs{{"flow", flow_name(fcfg)}, {"cocycle", cocycle_name(ccfg)}};
      r.cases.push_back(run_case("cocycle-check/" + flow_name(fcfg) + "/" + cocycle_name(ccfg), inputs, [&](json& n) {
        const Semiflow phi = build_flow(fcfg);
        const Semicocycle m = build_cocycle(ccfg, phi, policy);
        const auto grid = config_grid(cfg, phi.domain);
        std::vector<double> times = cfg.sweep.t;
        times.insert(times.end(), ss.begin(), ss.end());
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
        const double tol = quadrature_built(phi, m) ? cfg.tol.law_quadrature : cfg.tol.law;
        const double law = cocycle_law_residual(m, phi, times, grid);
        n["tolerance"] = tol;
        n["cocycle_residual"] = num(law);
        bool ok = law < tol;

        if (m.rate) {
          double err = 0.0;
          for (const Complex z : grid) err = std::max(err, std::abs(mdot0(m, z, cfg.sweep.steps).value - (*m.rate)(z)));
          n["mdot0_error"] = num(err);
          ok = ok && err <= cfg.tol.mdot0;
        }

        std::vector<double> fit_times{0.0};
        for (const double t : times) {
          if (t > 0.0) fit_times.push_back(t);
        }
        const auto dense = boundary_dense_grid(phi.domain, policy.r_cap, cfg.sweep.spokes);
        const GrowthFit fit = growth_fit(m, fit_times, dense);
        n["growth"] = {{"M", fit.M}, {"omega", fit.omega}, {"M_lsq", fit.M_lsq}, {"omega_lsq", fit.omega_lsq}};
        json rows = json::array();
        for (const auto& [t, sup] : fit.samples) rows.push_back({{"t", t}, {"sup_abs_m", num(sup)}});
        n["rows"] = rows;
        if (m.rate) {
          double sup_re = -std::numeric_limits<double>::infinity();
          for (const Complex z : dense) sup_re = std::max(sup_re, (*m.rate)(z).real());
          n["sup_re_rate"] = num(sup_re);
          const bool dissipative = sup_re <= kSignSlack;
          n["dissipative"] = dissipative;
          if (dissipative) ok = ok && fit.omega <= cfg.tol.growth && fit.M <= 1.0 + cfg.tol.growth;
        }
        return ok;
      }));
    }
  }
}

void bound_table(const ExperimentConfig& cfg, Report& r) {
  for (const auto& scfg : cfg.spaces) {
    const SpaceSpec space = build_space(scfg);
    for (const auto& fcfg : cfg.flows) {
      for (const auto& ccfg : cfg.cocycles) {
        const std::string id = space.describe() + "/" + flow_name(fcfg) + "/" + cocycle_name(ccfg);
        json inputs{{"space", space.describe()}, {"flow", flow_name(fcfg)}, {"cocycle", cocycle_name(ccfg)}};
        r.cases.push_back(run_case("bound-table/" + id, inputs, [&](json& n) {
          const Semiflow phi = build_flow(fcfg);
          const Semicocycle m = build_cocycle(ccfg, phi, space.policy);
          const WcSemigroup sg{phi, m, space};
          const auto fs = testset(cfg, space.domain);
          bool ok = true;
          double worst_ratio = 0.0;
          json rows = json::array();
          for (const double t : cfg.sweep.t) {
            const BoundResult b = theoretical_bound(sg, t);
            const LowerBound lb = operator_norm_lower_bound(sg, t, fs);
            const double ratio = lb.value / b.theoretical;
            worst_ratio = std::max(worst_ratio, ratio);
            json row{{"t", t},
                     {"theoretical", num(b.theoretical)},
                     {"empirical_lower", num(lb.value)},
                     {"ratio", num(ratio)},
                     {"formula", b.formula_tag},
                     {"witness", lb.witness},
                     {"skipped", lb.skipped.size()}};
            for (const auto& [k, v] : b.components) row["components"][k] = num(v);
            ok = ok && std::isfinite(b.theoretical) && lb.value <= b.theoretical * (1.0 + cfg.tol.bound_slack);
            for (const auto& e : cfg.bounds) {
              if (std::abs(e.t - t) > 1e-12) continue;
              const double err = std::abs(b.theoretical - e.theoretical);
              row["expected_theoretical"] = e.theoretical;
              row["expected_error"] = err;
              ok = ok && err <= e.tol;
            }
            rows.push_back(row);
          }
          n["max_ratio"] = num(worst_ratio);
          n["rows"] = rows;
          return ok;
        }));
      }
    }
  }
}

void generator_check(const ExperimentConfig& cfg, Report& r) {
  for (const auto& scfg : cfg.spaces) {
    const SpaceSpec space = build_space(scfg);
    for (const auto& fcfg : cfg.flows) {
      for (const auto& ccfg : cfg.cocycles) {
        for (const auto& e : function_entries(cfg, space.domain)) {
          const std::string id =
              space.describe() + "/" + flow_name(fcfg) + "/" + cocycle_name(ccfg) + "/" + e.label;
          json inputs{{"space", space.describe()},
                      {"flow", flow_name(fcfg)},
                      {"cocycle", cocycle_name(ccfg)},
                      {"function", e.label}};
          r.cases.push_back(run_case("generator-check/" + id, inputs, [&](json& n) {
            const Semiflow phi = build_flow(fcfg);
            const Semicocycle m = build_cocycle(ccfg, phi, space.policy);
            if (!phi.generator) fail(ErrorKind::InvalidParam, "flow has no generator");
            if (!m.rate) fail(ErrorKind::InvalidParam, "cocycle has no closed-form rate g");
            const WcSemigroup sg{phi, m, space};
            GeneratorCheckCfg gc;
            gc.steps = cfg.sweep.steps;
            gc.radius = cfg.sweep.grid_radius;
            gc.norm_ladder = cfg.sweep.norm_ladder;
            const GeneratorCheck res = generator_residual(sg, *phi.generator, *m.rate, materialize(e, space.domain), gc);
            json rows = json::array();
            for (std::size_t i = 0; i < res.steps.size(); ++i) {
              rows.push_back({{"t", res.steps[i]}, {"raw_residual", num(res.raw_residuals[i])}});
            }
            n["rows"] = rows;
            n["extrapolated_residual"] = num(res.extrapolated_residual);
            n["observed_order"] = num(res.observed_order);
            bool ok = res.extrapolated_residual < cfg.tol.generator &&
                      (std::isnan(res.observed_order) || res.observed_order >= cfg.tol.order);
            if (cfg.sweep.norm_ladder) {
              json ladder = json::object();
              for (std::size_t i = 0; i < res.ladder_steps.size(); ++i) {
                ladder[fmt(res.ladder_steps[i])] = num(res.ladder_norms[i]);
              }
              n["ladder"] = ladder;
              n["ladder_bounded"] = res.ladder_bounded;
              ok = ok && res.ladder_bounded;
            }
            return ok;
          }));
        }
      }
    }
  }
}

void reconstruct(const ExperimentConfig& cfg, Report& r) {
  const QuadPolicy policy = policy_of(cfg);
  for (const auto& fcfg : cfg.flows) {
    json inputs{{"flow", flow_name(fcfg)}};
    if (cfg.compare) inputs["compare"] = flow_name(*cfg.compare);
    r.cases.push_back(run_case("reconstruct/" + flow_name(fcfg), inputs, [&](json& n) {
      const Semiflow phi = build_flow(fcfg);
      const HoloFn& G = *phi.generator;
      std::optional<Semiflow> ref;
      if (cfg.compare) ref = build_flow(*cfg.compare);
      const auto grid = config_grid(cfg, phi.domain);
      std::vector<bool> escaped(grid.size(), false);
      double first_escape = kNaN;
      double deviation = 0.0;
      json rows = json::array();
      for (const double t : cfg.sweep.t) {
        double dev_t = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          if (escaped[i]) continue;
          try {
            const Complex u = phi(t, grid[i]);
            if (ref) dev_t = std::max(dev_t, std::abs(u - (*ref)(t, grid[i])));
          } catch (const EscapedDomainError& e) {
            escaped[i] = true;
            if (!(first_escape <= e.tau())) first_escape = e.tau();
          }
        }
        deviation = std::max(deviation, dev_t);
        json row{{"t", t}};
        if (ref) row["max_deviation"] = num(dev_t);
        rows.push_back(row);
      }
      const auto escapes = std::count(escaped.begin(), escaped.end(), true);
      double fd_err = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (escaped[i]) continue;
        fd_err = std::max(fd_err, std::abs(generator_fd(phi, grid[i], cfg.sweep.steps).value - G(grid[i])));
      }
      const auto coarse = sample_grid(phi.domain, cfg.sweep.grid_radius, 2, 8);
      std::vector<double> chain_ts;
      for (const double t : cfg.sweep.t) {
        if (t > 0.0) chain_ts.push_back(t);
      }
      n["rows"] = rows;
      if (ref) n["max_deviation"] = num(deviation);
      n["generator_fd_error"] = num(fd_err);
      n["escaped_points"] = escapes;
      n["first_escape_time"] = num(first_escape);
      if (escapes == 0) {
        n["chain_rule_residual"] = num(chain_rule_residual(phi, G, chain_ts, coarse, policy));
      }
      return (!ref || deviation <= cfg.tol.reconstruct) && fd_err <= cfg.tol.generator_fd;
    }));
  }
}

void continuity_probe_suite(const ExperimentConfig& cfg, Report& r) {
  for (const auto& scfg : cfg.spaces) {
    const SpaceSpec space = build_space(scfg);
    for (const auto& fcfg : cfg.flows) {
      for (const auto& ccfg : cfg.cocycles) {
        for (const auto& e : function_entries(cfg, space.domain)) {
          const std::string id =
              space.describe() + "/" + flow_name(fcfg) + "/" + cocycle_name(ccfg) + "/" + e.label;
          json inputs{{"space", space.describe()},
                      {"flow", flow_name(fcfg)},
                      {"cocycle", cocycle_name(ccfg)},
                      {"function", e.label}};
          r.cases.push_back(run_case("continuity-probe/" + id, inputs, [&](json& n) {
            const Semiflow phi = build_flow(fcfg);
            const Semicocycle m = build_cocycle(ccfg, phi, space.policy);
            const WcSemigroup sg{phi, m, space};
            const ContinuityProbe p = continuity_probe(sg, materialize(e, space.domain), cfg.sweep.t,
                                                       cfg.sweep.radii, cfg.tol.conv, cfg.tol.norm_cap);
            json rows = json::array();
            double min_norm_res = std::numeric_limits<double>::infinity();
            double max_cf = 0.0;
            for (const auto& rec : p.records) {
              json row{{"t", rec.t}, {"norm_residual", num(rec.norm_residual)}, {"norm_of_Cf", num(rec.norm_of_Cf)}};
              for (const auto& [radius, res] : rec.co_residuals) row["co_residual"]["r=" + fmt(radius)] = num(res);
              rows.push_back(row);
              min_norm_res = std::min(min_norm_res, rec.norm_residual);
              max_cf = std::max(max_cf, rec.norm_of_Cf);
            }
            const double t0 = *std::max_element(cfg.sweep.t.begin(), cfg.sweep.t.end());
            const double K = *std::max_element(cfg.sweep.radii.begin(), cfg.sweep.radii.end());
            const EquicontinuityReport eq = equicontinuity_probe(sg, t0, K);
            n["rows"] = rows;
            n["gamma_verdict"] = p.gamma_verdict;
            n["norm_verdict"] = p.norm_verdict;
            n["min_norm_residual"] = num(min_norm_res);
            n["max_norm_of_Cf"] = num(max_cf);
            n["equicontinuity"] = {{"R_prime", num(eq.R_prime)}, {"M_prime", num(eq.M_prime)}, {"holds", eq.holds}};
            const ContinuityExpect& x = cfg.continuity;
            bool ok = eq.holds;
            ok = ok && p.gamma_verdict == x.gamma.value_or(true);
            if (x.norm) ok = ok && p.norm_verdict == *x.norm;
            if (x.min_norm_residual) ok = ok && min_norm_res >= *x.min_norm_residual;
            if (x.max_norm_of_Cf) ok = ok && max_cf <= *x.max_norm_of_Cf + cfg.tol.norm;
            return ok;
          }));
        }
      }
    }
  }
}

void admissibility(const ExperimentConfig& cfg, Report& r) {
  const QuadPolicy policy = policy_of(cfg);
  for (const auto& fcfg : cfg.flows) {
    for (const auto& fn : cfg.functions) {
      const std::string g_text = expr::print(expr::parse(fn.expr));
      json inputs{{"flow", flow_name(fcfg)}, {"g", g_text}};
      r.cases.push_back(run_case("admissibility/" + flow_name(fcfg) + "/g=" + g_text, inputs, [&](json& n) {
        const Semiflow phi = build_flow(fcfg);
        if (!phi.generator) fail(ErrorKind::InvalidParam, "flow has no generator");
        const HoloFn& G = *phi.generator;
        const HoloFn Gp = derivative_fn(G, policy);
        const HoloFn g = expr::compile(fn.expr, phi.domain);
        const auto grid = config_grid(cfg, phi.domain);
        const FixedPointReport fp = fixed_points(phi, G, grid, policy);
        const auto recs = coboundary_admissibility(g, G, Gp, fp.fixed_points, cfg.tol.admissibility);
        json rows = json::array();
        bool all_admissible = !recs.empty();
        bool degenerate = false;
        for (const auto& a : recs) {
          rows.push_back({{"point_re", a.point.real()},
                          {"point_im", a.point.imag()},
                          {"ratio_re", num(a.ratio.real())},
                          {"ratio_im", num(a.ratio.imag())},
                          {"nearest", a.nearest},
                          {"distance", num(a.distance)},
                          {"admissible", a.admissible},
                          {"degenerate", a.degenerate}});
          all_admissible = all_admissible && a.admissible;
          degenerate = degenerate || a.degenerate;
        }
        n["rows"] = rows;
        n["trivial_flow"] = fp.trivial_flow;
        n["fixed_points"] = fp.fixed_points.size();
        n["admissible"] = all_admissible;
        n["degenerate"] = degenerate;
        if (!recs.empty()) n["order"] = recs.front().nearest;
        std::vector<double> ts;
        for (int i = 1; i <= 64; ++i) ts.push_back(i / 64.0);
        const Complex x = phi.domain.is_real() ? Complex(cfg.sweep.grid_radius, 0.0) : Complex(0.5 * cfg.sweep.grid_radius, 0.0);
        const auto revisit = min_revisit_time(phi, G, x, ts);
        n["min_revisit_time"] = revisit ? json(*revisit) : json(nullptr);
        bool ok = true;
        if (fn.admissible) ok = ok && all_admissible == *fn.admissible;
        if (fn.order) ok = ok && all_admissible && recs.front().nearest == *fn.order;
        return ok;
      }));
    }
    for (const auto& ccfg : cfg.cocycles) {
      json inputs{{"flow", flow_name(fcfg)}, {"cocycle", cocycle_name(ccfg)}};
      r.cases.push_back(run_case("admissibility/" + flow_name(fcfg) + "/" + cocycle_name(ccfg), inputs, [&](json& n) {
        const Semiflow phi = build_flow(fcfg);
        const Semicocycle m = build_cocycle(ccfg, phi, policy);
        json rows = json::array();
        double worst = 0.0;
        double gap = 0.0;
        for (const double t : cfg.sweep.t) {
          for (const auto& z : ccfg.zeros) {
            const Complex value = m(t, z.point);
            const Complex expected = std::pow(phi.derivative_at(t, z.point, policy), z.order);
            const double err = std::abs(value - expected);
            double gap_t = 0.0;
            for (int k = 0; k < 16; ++k) {
              const Complex near = z.point + std::polar(10.0 * ccfg.zero_guard, 2.0 * std::numbers::pi * k / 16.0);
              gap_t = std::max(gap_t, std::abs(m(t, near) - value));
            }
            worst = std::max(worst, err);
            gap = std::max(gap, gap_t);
            rows.push_back({{"t", t},
                            {"zero_re", z.point.real()},
                            {"zero_im", z.point.imag()},
                            {"value_re", value.real()},
                            {"value_im", value.imag()},
                            {"expected_re", expected.real()},
                            {"expected_im", expected.imag()},
                            {"error", num(err)},
                            {"extension_gap", num(gap_t)}});
          }
        }
        n["rows"] = rows;
        n["max_error"] = num(worst);
        n["max_extension_gap"] = num(gap);
        return worst <= cfg.tol.coboundary;
      }));
    }
  }
}

}  // namespace

Report run(const ExperimentConfig& cfg, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.meta = {{"tool", "wcsg"}, {"version", kToolVersion}, {"corpus", kTestsetVersion}, {"suite", cfg.suite}};
  r.config = echo(cfg);
  const std::string& s = cfg.suite;
  if (s == "norm-table") norm_table(cfg, r);
  else if (s == "semigroup-check") semigroup_check(cfg, r);
  else if (s == "cocycle-check") cocycle_check(cfg, r);
  else if (s == "bound-table") bound_table(cfg, r);
  else if (s == "generator-check") generator_check(cfg, r);
  else if (s == "reconstruct") reconstruct(cfg, r);
  else if (s == "continuity-probe") continuity_probe_suite(cfg, r);
  else if (s == "admissibility") admissibility(cfg, r);
  else throw ConfigError("suite", "unknown suite '" + s + "'");
  if (options.timing) {
    r.meta["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

}  // namespace wcsg::cli
