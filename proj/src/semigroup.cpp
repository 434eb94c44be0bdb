#include "wcsg/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <unordered_map>
#include <variant>

#include "wcsg/errors.hpp"

namespace wcsg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sup_radius(const SpaceSpec& space) {
  return space.domain.is_real() ? space.real_extent : space.policy.r_cap * space.domain.radius;
}

double grid_sup_of(const std::function<double(Complex)>& h, const SpaceSpec& space) {
  return grid_sup(h, space.domain, sup_radius(space), space.policy).value;
}

bool constant_on_samples(const HoloFn& f) {
  const double reach = f.domain.is_real() ? 16.0 : 0.95 * f.domain.radius;
  const Complex ref = f(Complex(0.0, 0.0));
  for (const Complex z : sample_grid(f.domain, reach, 8, 32)) {
    if (std::abs(f(z) - ref) > 1e-12 * std::max(1.0, std::abs(ref))) return false;
  }
  return true;
}

std::vector<Complex> probe_points(const Domain& domain, double radius) {
  return sample_grid(domain, radius, 6, 24);
}

struct PointKey {
  double t, re, im;
  bool operator==(const PointKey&) const = default;
};

struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const {
    const std::hash<double> h;
    return h(k.t) ^ (h(k.re) * 0x9e3779b97f4a7c15ULL) ^ (h(k.im) * 0xc2b2ae3d27d4eb4fULL);
  }
};

/// Same semigroup with m_t memoized per (t, z). Norm quadratures of several
/// test functions revisit identical nodes, and integral cocycles are costly.
WcSemigroup with_cached_cocycle(const WcSemigroup& sg) {
  if (std::holds_alternative<ExplicitOrigin>(sg.m.origin)) return sg;
  auto cache = std::make_shared<std::unordered_map<PointKey, Complex, PointKeyHash>>();
  WcSemigroup out = sg;
  out.m.eval = [inner = sg.m.eval, cache](double t, Complex z) {
    const PointKey key{t, z.real(), z.imag()};
    if (const auto it = cache->find(key); it != cache->end()) return it->second;
    const Complex v = inner(t, z);
    cache->emplace(key, v);
    return v;
  };
  return out;
}

}  // namespace

std::vector<HoloFn> default_testset(const Domain& domain) {
  std::vector<HoloFn> out;
  if (domain.is_real()) {
    const Domain d = domain;
    out.push_back(fns::one(d));
    out.push_back({d, [](Complex x) { return Complex(std::exp(x.real()), 0.0); }, FnKind::ClosedForm, "exp(x)"});
    out.push_back({d, [](Complex x) { return Complex(std::exp(-x.real() * x.real()), 0.0); }, FnKind::ClosedForm,
                   "exp(-x^2)"});
    out.push_back({d, [](Complex x) { return Complex(x.real() / (1.0 + x.real() * x.real()), 0.0); },
                   FnKind::ClosedForm, "x/(1+x^2)"});
    out.push_back({d, [](Complex x) { return Complex(std::cos(x.real()), 0.0); }, FnKind::ClosedForm, "cos(x)"});
    return out;
  }
  for (int n = 0; n <= 8; ++n) out.push_back(fns::monomial(n, domain));
  for (const Complex a : {Complex(0.5, 0.0), Complex(-0.5, 0.0), Complex(0.0, 0.5), Complex(0.9, 0.0),
                          std::polar(0.9, std::numbers::pi / 3.0)}) {
    out.push_back(fns::mobius_kernel(a));
  }
  out.push_back(fns::singular_inner());
  return out;
}

HoloFn WcSemigroup::apply(double t, const HoloFn& f) const {
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidParam, "semigroup time must be >= 0");
  if (t == 0.0) return f;
  std::ostringstream os;
  os << "C(" << t << ")" << f.label;
  const Semiflow& flow = phi;
  const Semicocycle& weight = m;
  return {f.domain, [flow, weight, f, t](Complex z) { return weight(t, z) * f(flow(t, z)); }, FnKind::Composite,
          os.str()};
}

double semigroup_residual(const WcSemigroup& sg, double t, double s, const std::vector<Complex>& grid,
                          const std::vector<HoloFn>& testset) {
  const auto fs = testset.empty() ? default_testset(sg.phi.domain) : testset;
  double worst = 0.0;
  for (const auto& f : fs) {
    const HoloFn joint = sg.apply(t + s, f);
    const HoloFn split = sg.apply(t, sg.apply(s, f));
    for (const Complex z : grid) {
      const Complex a = joint(z);
      worst = std::max(worst, std::abs(a - split(z)) / std::max(1.0, std::abs(a)));
    }
  }
  return worst;
}

BoundResult theoretical_bound(const WcSemigroup& sg, double t) {
  const SpaceSpec& space = sg.space;
  space.validate();
  BoundResult out;
  out.t = t;
  const HoloFn phi_t = sg.phi.at(t);
  const HoloFn m_t = sg.m.at(t);
  const double m_sup = grid_sup_of([&](Complex z) { return std::abs(m_t(z)); }, space);
  out.components["m_sup"] = m_sup;

  switch (space.kind) {
    case SpaceKind::Hardy: {
      const double a = std::abs(phi_t(Complex(0.0, 0.0)));
      out.formula_tag = "hardy";
      out.components["phi_t(0)"] = a;
      out.theoretical = std::pow((1.0 + a) / (1.0 - a), 1.0 / space.p) * m_sup;
      break;
    }
    case SpaceKind::Bergman: {
      const double a = std::abs(phi_t(Complex(0.0, 0.0)));
      // A grid lower bound for ||phi_t||_inf only enlarges (S+a)/(S-a).
      const double S = grid_sup_of([&](Complex z) { return std::abs(phi_t(z)); }, space);
      if (!(S > a)) fail(ErrorKind::UnsupportedSpaceBound, "Bergman estimate needs a nonconstant phi_t");
      const double p = space.p;
      const double alpha = space.alpha;
      const double K = alpha >= 0.0 ? 1.0 : std::pow(S + a, alpha / p) * std::pow(S + 3.0 * a, -alpha / p);
      out.formula_tag = "bergman";
      out.components["phi_t(0)"] = a;
      out.components["phi_t_sup"] = S;
      out.components["K"] = K;
      out.theoretical = K * std::pow((S + a) / (S - a), (alpha + 2.0) / p) * m_sup;
      break;
    }
    case SpaceKind::Dirichlet: {
      if (!constant_on_samples(m_t)) {
        fail(ErrorKind::UnsupportedSpaceBound, "Dirichlet estimate has no explicit multiplier constant for " +
                                                   sg.m.label);
      }
      const double a = std::abs(phi_t(Complex(0.0, 0.0)));
      const double L = -std::log1p(-a * a);
      const double mult = std::abs(m_t(Complex(0.0, 0.0)));
      out.formula_tag = "dirichlet";
      out.components["phi_t(0)"] = a;
      out.components["L"] = L;
      out.components["multiplier"] = mult;
      out.theoretical = std::sqrt(1.0 + 0.5 * (L + std::sqrt(L * (4.0 + L)))) * mult;
      break;
    }
    case SpaceKind::Bloch: {
      const Weight& v = space.weight;
      const QuadPolicy& pol = space.policy;
      const Complex a = phi_t(Complex(0.0, 0.0));
      const double K_v = grid_sup_of(
          [&](Complex z) { return std::abs(sg.phi.derivative_at(t, z, pol)) * v(z) / v(phi_t(z)); }, space);
      const double I_a = bloch_radial_integral(v, a);
      double mult_extra = 0.0;
      if (!constant_on_samples(m_t)) {
        const HoloFn dm = derivative_fn(m_t, pol);
        mult_extra = grid_sup_of(
            [&](Complex z) { return std::abs(dm(z)) * v(z) * std::max(1.0, bloch_radial_integral(v, z)); }, space);
      }
      out.formula_tag = "bloch";
      out.components["K_v"] = K_v;
      out.components["I_v(phi_t(0))"] = I_a;
      out.components["multiplier_derivative_term"] = mult_extra;
      out.theoretical = (m_sup + mult_extra) * std::max(1.0, K_v + I_a);
      break;
    }
    case SpaceKind::SupWeightedHolo:
    case SpaceKind::SupWeightedCont: {
      const Weight& v = space.weight;
      const double K = grid_sup_of([&](Complex z) { return v(z) / v(phi_t(z)); }, space);
      out.formula_tag = "supweight";
      out.components["K"] = K;
      out.theoretical = K * m_sup;
      break;
    }
  }
  if (!std::isfinite(out.theoretical)) fail(ErrorKind::Unbounded, "operator-norm bound is not finite");
  return out;
}

LowerBound operator_norm_lower_bound(const WcSemigroup& sg_in, double t, const std::vector<HoloFn>& testset) {
  const WcSemigroup sg = with_cached_cocycle(sg_in);
  const auto fs = testset.empty() ? default_testset(sg.space.domain) : testset;
  LowerBound out;
  for (const auto& f : fs) {
    try {
      const double nf = norm(sg.space, f);
      if (!(nf > 0.0)) {
        out.skipped.push_back(f.label);
        continue;
      }
      const double ratio = norm(sg.space, sg.apply(t, f)) / nf;
      if (ratio > out.value) {
        out.value = ratio;
        out.witness = f.label;
      }
    } catch (const Error&) {
      out.skipped.push_back(f.label);
    }
  }
  return out;
}

HoloFn generator_formula_apply(const HoloFn& G, const HoloFn& g, const HoloFn& f, const QuadPolicy& policy) {
  return {f.domain, [G, g, f, policy](Complex z) { return G(z) * derivative(f, z, policy) + g(z) * f(z); },
          FnKind::Composite, "A[" + f.label + "]"};
}

GeneratorCheck generator_residual(const WcSemigroup& sg, const HoloFn& G, const HoloFn& g, const HoloFn& f,
                                  const GeneratorCheckCfg& cfg) {
  if (cfg.steps.size() < 2) fail(ErrorKind::InvalidParam, "generator check needs at least two steps");
  GeneratorCheck out;
  out.steps = cfg.steps;
  const HoloFn Af = generator_formula_apply(G, g, f, sg.space.policy);
  const auto grid = probe_points(sg.phi.domain, cfg.radius);

  std::vector<Complex> target;
  for (const Complex z : grid) target.push_back(Af(z));
  out.raw_residuals.assign(cfg.steps.size(), 0.0);
  std::vector<Complex> quotients(cfg.steps.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Complex z = grid[k];
    const Complex fz = f(z);
    for (std::size_t i = 0; i < cfg.steps.size(); ++i) {
      const double h = cfg.steps[i];
      quotients[i] = (sg.m(h, z) * f(sg.phi(h, z)) - fz) / h;
      out.raw_residuals[i] = std::max(out.raw_residuals[i], std::abs(quotients[i] - target[k]));
    }
    const Extrapolation ex = extrapolate_to_zero(quotients, cfg.steps);
    if (!is_finite(ex.value)) fail(ErrorKind::NonConvergent, "difference quotients are not finite");
    out.extrapolated_residual = std::max(out.extrapolated_residual, std::abs(ex.value - target[k]));
  }
  const std::size_t n = cfg.steps.size();
  const double r1 = out.raw_residuals[n - 2];
  const double r2 = out.raw_residuals[n - 1];
  out.observed_order = (r1 > 1e-13 && r2 > 1e-13) ? std::log(r1 / r2) / std::log(cfg.steps[n - 2] / cfg.steps[n - 1])
                                                  : kNaN;

  if (cfg.norm_ladder) {
    for (const double h : {1.0, 0.5, 0.1, 0.01, 0.001}) {
      out.ladder_steps.push_back(h);
      try {
        const HoloFn dq{f.domain,
                        [sg, f, h](Complex z) { return (sg.m(h, z) * f(sg.phi(h, z)) - f(z)) / h; },
                        FnKind::Composite, "dq"};
        out.ladder_norms.push_back(norm(sg.space, dq));
      } catch (const Error&) {
        out.ladder_norms.push_back(kNaN);
      }
    }
    // Bounded quotients settle; members outside D(A) keep growing as h -> 0.
    const double coarse = std::max({out.ladder_norms[0], out.ladder_norms[1], out.ladder_norms[2]});
    const double fine = std::max(out.ladder_norms[3], out.ladder_norms[4]);
    if (std::any_of(out.ladder_norms.begin(), out.ladder_norms.end(), [](double x) { return std::isnan(x); })) {
      out.ladder_bounded = false;
    } else {
      out.ladder_bounded = fine <= 5.0 * coarse + 1e-12;
    }
  }
  return out;
}

ContinuityProbe continuity_probe(const WcSemigroup& sg_in, const HoloFn& f, const std::vector<double>& ts,
                                 const std::vector<double>& radii, double tol_conv, double norm_cap) {
  if (ts.empty() || radii.empty()) fail(ErrorKind::InvalidParam, "continuity probe needs times and radii");
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] < ts[i - 1])) fail(ErrorKind::InvalidParam, "probe times must decrease");
  }
  const WcSemigroup sg = with_cached_cocycle(sg_in);
  const SpaceSpec& space = sg.space;
  const bool weighted = space.kind == SpaceKind::SupWeightedHolo || space.kind == SpaceKind::SupWeightedCont;
  ContinuityProbe out;
  double max_norm = 0.0;
  for (const double t : ts) {
    ContinuityRecord rec;
    rec.t = t;
    const HoloFn Cf = sg.apply(t, f);
    const HoloFn diff = fns::difference(Cf, f);
    rec.norm_residual = norm(space, diff);
    rec.norm_of_Cf = norm(space, Cf);
    max_norm = std::max(max_norm, rec.norm_of_Cf);
    double prev = 0.0;
    for (const double r : radii) {
      const auto h = [&](Complex z) { return std::abs(diff(z)) * (weighted ? space.weight(z) : 1.0); };
      const double s = space.domain.is_real() ? r : r * space.domain.radius;
      // sup over nested compacts is monotone; the max keeps grid noise from breaking that
      prev = std::max(prev, grid_sup(h, space.domain, s, space.policy).value);
      rec.co_residuals.emplace_back(r, prev);
    }
    out.records.push_back(std::move(rec));
  }
  const auto& last = out.records.back();
  const bool co_small = std::all_of(last.co_residuals.begin(), last.co_residuals.end(),
                                    [&](const auto& rr) { return rr.second < tol_conv; });
  out.gamma_verdict = co_small && max_norm < norm_cap;
  out.norm_verdict = last.norm_residual < tol_conv;
  return out;
}

EquicontinuityReport equicontinuity_probe(const WcSemigroup& sg, double t0, double K_radius, double margin) {
  if (!(t0 > 0.0)) fail(ErrorKind::InvalidParam, "equicontinuity probe needs t0 > 0");
  if (!(K_radius > 0.0)) fail(ErrorKind::InvalidParam, "compact radius must be positive");
  EquicontinuityReport out;
  const auto grid = sample_grid(sg.phi.domain, K_radius, 8, 32);
  for (int i = 0; i <= 20; ++i) {
    const double t = t0 * i / 20.0;
    for (const Complex z : grid) {
      out.R_prime = std::max(out.R_prime, std::abs(sg.phi(t, z)));
      out.M_prime = std::max(out.M_prime, std::abs(sg.m(t, z)));
    }
  }
  const bool inside = !sg.phi.domain.is_bounded() || out.R_prime < sg.phi.domain.radius - margin;
  out.holds = inside && std::isfinite(out.M_prime) && out.M_prime < 1e150;
  return out;
}

}  // namespace wcsg
