#include "wcsg/flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wcsg/errors.hpp"

namespace wcsg {

namespace {

constexpr double kMinStep = 1e-14;

std::string fmt_point(double t, Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "(t=" << t << ", z=" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return os.str();
}

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void only_params(const std::string& name, const std::map<std::string, double>& params,
                 std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : params) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(ErrorKind::InvalidParam, "unknown parameter '" + key + "' for semiflow " + name);
    }
    if (!std::isfinite(value)) fail(ErrorKind::InvalidParam, "non-finite parameter '" + key + "'");
  }
}

/// Wraps a closed form with the time and domain preconditions.
std::function<Complex(double, Complex)> guarded(Domain domain, std::function<Complex(double, Complex)> f) {
  return [domain, f = std::move(f)](double t, Complex z) {
    if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidParam, "semiflow time must be >= 0");
    if (!domain.contains(z)) fail(ErrorKind::DomainExit, "point outside " + domain.describe() + " " + fmt_point(t, z));
    return f(t, z);
  };
}

Semiflow catalog(std::string name, std::map<std::string, double> params, Domain domain,
                 std::function<Complex(double, Complex)> f, HoloFn G,
                 std::function<Complex(double, Complex)> dphi, std::string label) {
  Semiflow phi;
  phi.domain = domain;
  phi.eval = guarded(domain, std::move(f));
  phi.origin = CatalogOrigin{std::move(name), std::move(params)};
  phi.generator = std::move(G);
  phi.spatial_derivative = std::move(dphi);
  phi.label = std::move(label);
  return phi;
}

Complex rk4_step(const HoloFn& G, Complex u, double h, const Domain& domain, bool& left) {
  const auto stage = [&](Complex w) {
    if (!domain.contains(w)) {
      left = true;
      return Complex(0.0, 0.0);
    }
    return G(w);
  };
  const Complex k1 = stage(u);
  const Complex k2 = stage(u + 0.5 * h * k1);
  const Complex k3 = stage(u + 0.5 * h * k2);
  const Complex k4 = stage(u + h * k3);
  return u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

void OdeCfg::validate() const {
  if (!(h0 > 0.0) || !(tol_step > 0.0) || !(exit_margin > 0.0)) {
    fail(ErrorKind::InvalidParam, "ODE step, tolerance and exit margin must be positive");
  }
}

HoloFn Semiflow::at(double t) const {
  std::ostringstream os;
  os << label << "_t(" << t << ")";
  auto e = eval;
  return {domain, [e, t](Complex z) { return e(t, z); }, FnKind::Composite, os.str()};
}

Complex Semiflow::derivative_at(double t, Complex z, const QuadPolicy& policy) const {
  if (spatial_derivative) return spatial_derivative(t, z);
  return derivative(at(t), z, policy);
}

std::vector<std::string> catalog_semiflow_names() {
  return {"dilation", "attracting", "rotation", "translation-real", "cubic-real", "identity"};
}

Semiflow make_catalog_semiflow(const std::string& name, const std::map<std::string, double>& params) {
  const Domain disc = Domain::unit_disc();
  const Domain line = Domain::real_line();

  if (name == "dilation") {
    only_params(name, params, {"c", "c_re", "c_im"});
    if (params.count("c") && params.count("c_re")) fail(ErrorKind::InvalidParam, "give either c or c_re");
    const Complex c(params.count("c") ? params.at("c") : param(params, "c_re", 1.0), param(params, "c_im", 0.0));
    if (c.real() < 0.0) fail(ErrorKind::InvalidParam, "dilation needs Re c >= 0 to stay in the disc");
    std::ostringstream os;
    os << "dilation(c=" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    HoloFn G{disc, [c](Complex z) { return -c * z; }, FnKind::ClosedForm, "-c*z"};
    return catalog(name, params, disc, [c](double t, Complex z) { return std::exp(-c * t) * z; }, G,
                   [c](double t, Complex) { return std::exp(-c * t); }, os.str());
  }
  if (name == "attracting") {
    only_params(name, params, {});
    HoloFn G{disc, [](Complex z) { return 1.0 - z; }, FnKind::ClosedForm, "1-z"};
    return catalog(
        name, params, disc,
        [](double t, Complex z) {
          const double e = std::exp(-t);
          return e * z + (-std::expm1(-t));
        },
        G, [](double t, Complex) { return Complex(std::exp(-t), 0.0); }, "attracting");
  }
  if (name == "rotation") {
    only_params(name, params, {"rate"});
    const double rate = param(params, "rate", 1.0);
    std::ostringstream os;
    os << "rotation(rate=" << rate << ")";
    HoloFn G{disc, [rate](Complex z) { return Complex(0.0, rate) * z; }, FnKind::ClosedForm, "i*rate*z"};
    return catalog(name, params, disc,
                   [rate](double t, Complex z) { return std::polar(1.0, rate * t) * z; }, G,
                   [rate](double t, Complex) { return std::polar(1.0, rate * t); }, os.str());
  }
  if (name == "translation-real") {
    only_params(name, params, {});
    HoloFn G{line, [](Complex) { return Complex(1.0, 0.0); }, FnKind::ClosedForm, "1"};
    return catalog(name, params, line, [](double t, Complex x) { return Complex(x.real() + t, 0.0); }, G,
                   [](double, Complex) { return Complex(1.0, 0.0); }, "translation-real");
  }
  if (name == "cubic-real") {
    only_params(name, params, {});
    HoloFn G{line,
             [](Complex x) {
               const double c = std::cbrt(x.real());
               return Complex(c * c, 0.0);
             },
             FnKind::ClosedForm, "x^(2/3)"};
    return catalog(
        name, params, line,
        [](double t, Complex x) {
          const double c = std::cbrt(x.real()) + t / 3.0;
          return Complex(c * c * c, 0.0);
        },
        G,
        [](double t, Complex x) {
          const double c = std::cbrt(x.real());
          if (c == 0.0) {
            if (t == 0.0) return Complex(1.0, 0.0);
            fail(ErrorKind::NonConvergent, "cubic flow is not differentiable at x = 0 for t > 0");
          }
          const double q = (c + t / 3.0) / c;
          return Complex(q * q, 0.0);
        },
        "cubic-real");
  }
  if (name == "identity") {
    only_params(name, params, {});
    HoloFn G{disc, [](Complex) { return Complex(0.0, 0.0); }, FnKind::ClosedForm, "0"};
    return catalog(name, params, disc, [](double, Complex z) { return z; }, G,
                   [](double, Complex) { return Complex(1.0, 0.0); }, "identity");
  }
  fail(ErrorKind::UnknownCatalogEntry, "no semiflow named '" + name + "'");
}

double semiflow_law_residual(const Semiflow& phi, const std::vector<double>& ts,
                             const std::vector<Complex>& grid) {
  double worst = 0.0;
  for (const Complex z : grid) {
    worst = std::max(worst, std::abs(phi(0.0, z) - z));
    for (const double t : ts) {
      for (const double s : ts) {
        worst = std::max(worst, std::abs(phi(t + s, z) - phi(t, phi(s, z))));
      }
    }
  }
  return worst;
}

GeneratorEstimate extrapolated_quotient(const std::function<Complex(double)>& quotient,
                                        const std::vector<double>& steps) {
  if (steps.size() < 2) fail(ErrorKind::InvalidParam, "difference quotients need at least two steps");
  std::vector<Complex> values;
  values.reserve(steps.size());
  for (const double h : steps) values.push_back(quotient(h));
  const Extrapolation ex = extrapolate_to_zero(values, steps);
  const double scale = std::max(1.0, std::abs(ex.value));
  if (!is_finite(ex.value) || ex.last_correction > 1e-2 * scale) {
    fail(ErrorKind::NonConvergent, "difference quotients do not settle under extrapolation");
  }
  return {ex.value, ex.order_evidence, steps};
}

GeneratorEstimate generator_fd(const Semiflow& phi, Complex z, const std::vector<double>& steps) {
  return extrapolated_quotient([&](double h) { return (phi(h, z) - z) / h; }, steps);
}

FixedPointReport fixed_points(const Semiflow& phi, const HoloFn& G, const std::vector<Complex>& grid,
                              const QuadPolicy& policy, double tol) {
  FixedPointReport out;
  out.trivial_flow = std::all_of(grid.begin(), grid.end(), [&](Complex z) { return std::abs(G(z)) < tol; });
  if (out.trivial_flow) return out;

  const bool real = phi.domain.is_real();
  for (const Complex seed : grid) {
    Complex z = seed;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      const Complex gz = G(z);
      if (std::abs(gz) < 1e-14) {
        converged = true;
        break;
      }
      const Complex dg = derivative(G, z, policy);
      if (!(std::abs(dg) > 0.0) || !is_finite(dg)) break;
      Complex next = z - gz / dg;
      if (real) next = {next.real(), 0.0};
      if (!phi.domain.contains(next, 1e-12)) break;
      const double step = std::abs(next - z);
      z = next;
      if (step < 1e-14 * std::max(1.0, std::abs(z))) {
        converged = std::abs(G(z)) < tol;
        break;
      }
    }
    if (!converged) continue;
    const bool seen = std::any_of(out.zeros.begin(), out.zeros.end(),
                                  [&](Complex b) { return std::abs(b - z) < 1e-7; });
    if (!seen) out.zeros.push_back(z);
  }
  std::sort(out.zeros.begin(), out.zeros.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (const Complex b : out.zeros) {
    double worst = 0.0;
    for (const double t : {0.1, 0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(phi(t, b) - b));
    out.phi_residuals.push_back(worst);
    if (worst < tol) out.fixed_points.push_back(b);
  }
  return out;
}

std::optional<double> min_revisit_time(const Semiflow& phi, const HoloFn& G, Complex x,
                                       const std::vector<double>& ts, double tol) {
  std::optional<double> best;
  for (const double t : ts) {
    if (!(t > 0.0)) continue;
    if (std::abs(G(phi(t, x))) < tol && (!best || t < *best)) best = t;
  }
  return best;
}

Semiflow semiflow_from_generator(const HoloFn& G, const OdeCfg& cfg) {
  cfg.validate();
  const Domain domain = G.domain;
  auto integrate = [G, cfg, domain](double t, Complex z) {
    if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidParam, "semiflow time must be >= 0");
    if (!domain.contains(z)) fail(ErrorKind::DomainExit, "start point outside " + domain.describe() + " " + fmt_point(t, z));
    const bool real = domain.is_real();
    const double limit = domain.is_bounded() ? domain.radius * (1.0 - cfg.exit_margin) : 0.0;
    double tau = 0.0;
    double h = cfg.h0;
    Complex u = z;
    bool last_reject_domain = false;
    while (tau < t) {
      const double step = std::min(h, t - tau);
      bool left = false;
      const Complex full = rk4_step(G, u, step, domain, left);
      const Complex mid = rk4_step(G, u, 0.5 * step, domain, left);
      const Complex half = rk4_step(G, mid, 0.5 * step, domain, left);
      const double err = std::abs(full - half);
      if (left || !is_finite(half) || !(err < cfg.tol_step)) {
        last_reject_domain = left || !is_finite(half);
        h = 0.5 * step;
        if (h < kMinStep) {
          if (last_reject_domain) {
            throw EscapedDomainError(tau, "trajectory leaves " + domain.describe() + " " + fmt_point(tau, z));
          }
          fail(ErrorKind::StepUnderflow, "RK4 step underflow at " + fmt_point(tau, z));
        }
        continue;
      }
      Complex next = half + (half - full) / 15.0;
      if (real) next = {next.real(), 0.0};
      if (domain.is_bounded() && std::abs(next) >= limit) {
        throw EscapedDomainError(tau, "trajectory reaches the boundary of " + domain.describe() + " " + fmt_point(tau, z));
      }
      u = next;
      tau = step == t - tau ? t : tau + step;
      if (err < cfg.tol_step / 64.0) h = std::min(2.0 * step, 1.0);
      else h = step;
    }
    return u;
  };
  Semiflow phi;
  phi.domain = domain;
  phi.eval = integrate;
  phi.origin = OdeOrigin{G, cfg};
  phi.generator = G;
  phi.label = "ode[" + G.label + "]";
  return phi;
}

double chain_rule_residual(const Semiflow& phi, const HoloFn& G, const std::vector<double>& ts,
                           const std::vector<Complex>& grid, const QuadPolicy& policy) {
  double worst = 0.0;
  for (const double t : ts) {
    const HoloFn flow_t = phi.at(t);
    for (const Complex z : grid) {
      const Complex lhs = G(phi(t, z));
      const Complex rhs = derivative(flow_t, z, policy) * G(z);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace wcsg
