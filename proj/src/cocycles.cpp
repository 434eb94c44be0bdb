#include "wcsg/cocycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wcsg/errors.hpp"

namespace wcsg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOverflowGuard = 1e150;

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidParam, "cocycle time must be >= 0");
}

Complex time_integral(const HoloFn& g, const Semiflow& phi, double t, Complex z, int n) {
  const GaussRule& rule = gauss_legendre(n);
  Complex acc{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    const double s = 0.5 * t * (rule.nodes[i] + 1.0);
    acc += rule.weights[i] * g(phi(s, z));
  }
  return 0.5 * t * acc;
}

}  // namespace

HoloFn Semicocycle::at(double t) const {
  std::ostringstream os;
  os << label << "_t(" << t << ")";
  auto e = eval;
  return {domain, [e, t](Complex z) { return e(t, z); }, FnKind::Composite, os.str()};
}

Semicocycle unit_cocycle(Domain domain) {
  Semicocycle m;
  m.domain = domain;
  m.eval = [](double t, Complex) {
    check_time(t);
    return Complex(1.0, 0.0);
  };
  m.origin = ExplicitOrigin{"one"};
  m.rate = fns::constant(0.0, domain);
  m.label = "1";
  return m;
}

Semicocycle exponential_cocycle(const HoloFn& g) {
  Semicocycle m;
  m.domain = g.domain;
  m.eval = [g](double t, Complex z) {
    check_time(t);
    return t == 0.0 ? Complex(1.0, 0.0) : std::exp(t * g(z));
  };
  m.origin = ExplicitOrigin{"exp(t*g)"};
  m.rate = g;
  m.label = "exp(t*" + g.label + ")";
  return m;
}

Semicocycle derivative_cocycle(const Semiflow& phi, const QuadPolicy& policy) {
  Semicocycle m;
  m.domain = phi.domain;
  m.eval = [phi, policy](double t, Complex z) {
    check_time(t);
    return t == 0.0 ? Complex(1.0, 0.0) : phi.derivative_at(t, z, policy);
  };
  m.origin = DerivativeOrigin{};
  if (phi.generator) m.rate = derivative_fn(*phi.generator, policy);
  m.label = phi.label + "'";
  return m;
}

Semicocycle cocycle_from_g(const HoloFn& g, const Semiflow& phi, const QuadPolicy& policy) {
  policy.validate();
  Semicocycle m;
  m.domain = phi.domain;
  m.eval = [g, phi, policy](double t, Complex z) {
    check_time(t);
    if (t == 0.0) return Complex(1.0, 0.0);
    const int n = static_cast<int>(std::ceil(32.0 * std::max(1.0, t)));
    const Complex coarse = time_integral(g, phi, t, z, n);
    const Complex fine = time_integral(g, phi, t, z, 2 * n);
    if (!is_finite(fine)) fail(ErrorKind::Unbounded, "non-finite cocycle exponent");
    if (std::abs(fine - coarse) > 100.0 * policy.tol * std::max(1.0, std::abs(fine))) {
      fail(ErrorKind::NonConvergent, "time integral of " + g.label + " changed under node doubling");
    }
    return std::exp(fine);
  };
  m.origin = IntegralOrigin{g, policy};
  m.rate = g;
  m.label = "int[" + g.label + "]";
  return m;
}

Semicocycle coboundary(const HoloFn& omega, const Semiflow& phi, const std::vector<DeclaredZero>& zeros,
                       const CoboundaryCfg& cfg, const QuadPolicy& policy) {
  if (!(cfg.zero_guard > 0.0) || !(cfg.tol > 0.0) || cfg.interpolation_nodes < 8) {
    fail(ErrorKind::InvalidParam, "coboundary guard, tolerance and node count must be positive");
  }
  if (!zeros.empty() && !phi.domain.is_bounded()) {
    fail(ErrorKind::InvalidParam, "declared zeros are supported on disc domains only");
  }
  for (const auto& zero : zeros) {
    if (zero.order < 1) fail(ErrorKind::InvalidParam, "zero orders must be positive");
    if (!phi.domain.contains(zero.point, 2.0 * cfg.zero_guard)) {
      fail(ErrorKind::InvalidParam, "declared zero too close to the boundary");
    }
    if (std::abs(omega(zero.point)) > cfg.tol) {
      fail(ErrorKind::InvalidParam, "declared zero is not a zero of " + omega.label);
    }
    for (const double t : {0.1, 0.5, 1.0, 2.0}) {
      if (std::abs(phi(t, zero.point) - zero.point) > cfg.tol) {
        fail(ErrorKind::ZeroNotFixed, "declared zero of " + omega.label + " moves under " + phi.label);
      }
    }
  }

  // Cauchy interpolation of the quotient from the circle of radius 2*guard;
  // the quotient is holomorphic across the zero once orders match.
  const auto interpolate = [omega, phi, cfg](double t, Complex b, Complex z) {
    const int n = cfg.interpolation_nodes;
    const double rho = 2.0 * cfg.zero_guard;
    Complex acc{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      const Complex offset = std::polar(rho, kTwoPi * k / n);
      const Complex w = b + offset;
      acc += omega(phi(t, w)) / omega(w) * offset / (w - z);
    }
    return acc / static_cast<double>(n);
  };
  const auto at_zero = [phi, policy](double t, const DeclaredZero& zero) {
    return std::pow(phi.derivative_at(t, zero.point, policy), zero.order);
  };

  for (const auto& zero : zeros) {
    for (const double t : {0.5, 1.0}) {
      const Complex limit = interpolate(t, zero.point, zero.point);
      const Complex power = at_zero(t, zero);
      if (std::abs(limit - power) > cfg.tol * std::max(1.0, std::abs(power))) {
        fail(ErrorKind::OrderMismatch, "quotient limit of " + omega.label + " disagrees with the order-" +
                                           std::to_string(zero.order) + " derivative power");
      }
    }
  }
  for (const Complex z : sample_grid(phi.domain, 0.95 * phi.domain.radius, 8, 32)) {
    if (omega(z) != Complex(0.0, 0.0)) continue;
    const bool declared = std::any_of(zeros.begin(), zeros.end(), [&](const DeclaredZero& d) {
      return std::abs(d.point - z) <= cfg.zero_guard;
    });
    if (!declared) fail(ErrorKind::InvalidParam, "undeclared zero of " + omega.label);
  }

  Semicocycle m;
  m.domain = phi.domain;
  m.eval = [omega, phi, zeros, cfg, interpolate, at_zero](double t, Complex z) {
    check_time(t);
    if (t == 0.0) return Complex(1.0, 0.0);
    for (const auto& zero : zeros) {
      const double d = std::abs(z - zero.point);
      if (d == 0.0) return at_zero(t, zero);
      if (d <= cfg.zero_guard) return interpolate(t, zero.point, z);
    }
    const Complex w = omega(z);
    if (w == Complex(0.0, 0.0)) fail(ErrorKind::InvalidParam, "undeclared zero of " + omega.label);
    return omega(phi(t, z)) / w;
  };
  m.origin = CoboundaryOrigin{omega, zeros};
  m.label = "cob[" + omega.label + "]";
  return m;
}

double cocycle_law_residual(const Semicocycle& m, const Semiflow& phi, const std::vector<double>& ts,
                            const std::vector<Complex>& grid) {
  double worst = 0.0;
  for (const Complex z : grid) {
    worst = std::max(worst, std::abs(m(0.0, z) - 1.0));
    for (const double t : ts) {
      const Complex mt = m(t, z);
      const Complex moved = phi(t, z);
      for (const double s : ts) {
        worst = std::max(worst, std::abs(m(t + s, z) - mt * m(s, moved)));
      }
    }
  }
  return worst;
}

GeneratorEstimate mdot0(const Semicocycle& m, Complex z, const std::vector<double>& steps) {
  return extrapolated_quotient([&](double h) { return (m(h, z) - 1.0) / h; }, steps);
}

std::vector<AdmissibilityRecord> coboundary_admissibility(const HoloFn& g, const HoloFn& G,
                                                          const HoloFn& Gprime,
                                                          const std::vector<Complex>& fixed_points,
                                                          double tol) {
  if (!(tol > 0.0)) fail(ErrorKind::InvalidParam, "admissibility tolerance must be positive");
  std::vector<AdmissibilityRecord> out;
  for (const Complex b : fixed_points) {
    AdmissibilityRecord rec;
    rec.point = b;
    if (std::abs(G(b)) > std::sqrt(tol)) fail(ErrorKind::InvalidParam, "supplied point is not a zero of G");
    const Complex gp = Gprime(b);
    if (std::abs(gp) < tol) {
      rec.degenerate = true;
      rec.ratio = {std::numeric_limits<double>::quiet_NaN(), 0.0};
      out.push_back(rec);
      continue;
    }
    rec.ratio = g(b) / gp;
    rec.nearest = std::max(0L, std::lround(rec.ratio.real()));
    rec.distance = std::abs(rec.ratio - static_cast<double>(rec.nearest));
    rec.admissible = rec.distance <= tol;
    out.push_back(rec);
  }
  return out;
}

GrowthFit growth_fit(const Semicocycle& m, const std::vector<double>& ts, const std::vector<Complex>& grid) {
  if (grid.empty()) fail(ErrorKind::InvalidParam, "growth fit needs a grid");
  if (std::none_of(ts.begin(), ts.end(), [](double t) { return t > 0.0; })) {
    fail(ErrorKind::InvalidParam, "growth fit needs a positive time");
  }
  GrowthFit fit;
  double s0 = 1.0;
  for (const double t : ts) {
    double sup = 0.0;
    for (const Complex z : grid) {
      const double v = std::abs(m(t, z));
      if (!std::isfinite(v) || v > kOverflowGuard) {
        fail(ErrorKind::UnboundedSignal, "sup of |m_t| exceeds the overflow guard at t = " + std::to_string(t));
      }
      sup = std::max(sup, v);
    }
    fit.samples.emplace_back(t, sup);
    if (t == 0.0) s0 = sup;
  }

  fit.M = std::max(1.0, s0);
  fit.omega = -std::numeric_limits<double>::infinity();
  for (const auto& [t, sup] : fit.samples) {
    if (t > 0.0 && sup > 0.0) fit.omega = std::max(fit.omega, std::log(sup / fit.M) / t);
  }

  // Least-squares line through (t, log sup) kept as a diagnostic.
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (const auto& [t, sup] : fit.samples) {
    if (!(sup > 0.0)) continue;
    const double y = std::log(sup);
    n += 1;
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double den = n * stt - st * st;
  if (n >= 2 && den > 0.0) {
    fit.omega_lsq = (n * sty - st * sy) / den;
    double logm = (sy - fit.omega_lsq * st) / n;
    for (const auto& [t, sup] : fit.samples) {
      if (sup > 0.0) logm = std::max(logm, std::log(sup) - fit.omega_lsq * t);
    }
    fit.M_lsq = std::max(1.0, std::exp(logm));
  } else {
    fit.omega_lsq = fit.omega;
    fit.M_lsq = fit.M;
  }
  return fit;
}

std::vector<Complex> boundary_dense_grid(const Domain& domain, double r_cap, int spokes) {
  if (domain.is_real()) return sample_grid(domain, 64.0, 32, 32);
  if (!domain.is_bounded()) return sample_grid(domain, 8.0, 16, spokes);
  std::vector<double> radii;
  for (int i = 0; i <= 9; ++i) radii.push_back(0.1 * i);
  const int m = 12;
  const double span = std::log10(0.1 / (1.0 - r_cap));
  for (int k = 1; k <= m; ++k) radii.push_back(1.0 - 0.1 * std::pow(10.0, -span * k / m));
  std::vector<Complex> grid{Complex(0.0, 0.0)};
  for (std::size_t i = 1; i < radii.size(); ++i) {
    for (int k = 0; k < spokes; ++k) grid.push_back(std::polar(radii[i] * domain.radius, kTwoPi * k / spokes));
  }
  return grid;
}

}  // namespace wcsg
