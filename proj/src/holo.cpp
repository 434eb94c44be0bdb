#include "wcsg/holo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "wcsg/errors.hpp"

namespace wcsg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxCauchyNodes = 4096;

std::string fmt_complex(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

Complex cauchy_trapezoid(const HoloFn& f, Complex z, double radius, int n, double& max_abs) {
  Complex acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const Complex w = std::polar(1.0, kTwoPi * k / n);
    const Complex value = f(z + radius * w);
    if (!is_finite(value)) {
      fail(ErrorKind::Unbounded, "non-finite value on Cauchy contour around " + fmt_complex(z));
    }
    max_abs = std::max(max_abs, std::abs(value));
    acc += value / w;
  }
  return acc / (static_cast<double>(n) * radius);
}

Complex real_derivative(const HoloFn& f, double x) {
  const double h0 = 1e-2 * std::max(1.0, std::abs(x));
  std::array<Complex, 3> values{};
  std::array<double, 3> steps{};
  double h = h0;
  for (int i = 0; i < 3; ++i) {
    values[i] = (f(Complex(x + h, 0.0)) - f(Complex(x - h, 0.0))) / (2.0 * h);
    steps[i] = h * h;  // central differences expand in even powers
    h *= 0.5;
  }
  return extrapolate_to_zero(values, steps).value;
}

}  // namespace

// ---------------------------------------------------------------------------

Domain Domain::disc(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::InvalidParam, "disc radius must be positive");
  return {DomainKind::Disc, r};
}

bool Domain::contains(Complex z, double margin) const {
  if (!is_finite(z)) return false;
  switch (kind) {
    case DomainKind::UnitDisc:
    case DomainKind::Disc: return std::abs(z) < radius - margin;
    case DomainKind::RealLine: return z.imag() == 0.0;
    case DomainKind::Plane: return true;
  }
  return false;
}

double Domain::boundary_distance(Complex z) const {
  if (is_bounded()) return radius - std::abs(z);
  return std::numeric_limits<double>::infinity();
}

std::string Domain::describe() const {
  switch (kind) {
    case DomainKind::UnitDisc: return "unit-disc";
    case DomainKind::Disc: {
      std::ostringstream os;
      os << "disc(" << radius << ")";
      return os.str();
    }
    case DomainKind::RealLine: return "real-line";
    case DomainKind::Plane: return "plane";
  }
  return "unknown";
}

void QuadPolicy::validate() const {
  if (n_theta < 16) fail(ErrorKind::InvalidParam, "n_theta must be >= 16");
  if (n_radial < 8) fail(ErrorKind::InvalidParam, "n_radial must be >= 8");
  if (!(r_cap > 0.0 && r_cap < 1.0)) fail(ErrorKind::InvalidParam, "r_cap must lie in (0,1)");
  if (!(tol > 0.0)) fail(ErrorKind::InvalidParam, "tol must be positive");
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ---------------------------------------------------------------------------

namespace fns {

HoloFn constant(Complex c, Domain domain) {
  std::ostringstream os;
  os << "const(" << fmt_complex(c) << ")";
  return {domain, [c](Complex) { return c; }, FnKind::ClosedForm, os.str()};
}

HoloFn one(Domain domain) {
  return {domain, [](Complex) { return Complex(1.0, 0.0); }, FnKind::ClosedForm, "1"};
}

HoloFn identity(Domain domain) {
  return {domain, [](Complex z) { return z; }, FnKind::ClosedForm, "id"};
}

HoloFn monomial(int n, Domain domain) {
  if (n < 0) fail(ErrorKind::InvalidParam, "monomial degree must be nonnegative");
  return {domain,
          [n](Complex z) {
            Complex acc{1.0, 0.0};
            for (int k = 0; k < n; ++k) acc *= z;
            return acc;
          },
          FnKind::ClosedForm, "e_" + std::to_string(n)};
}

HoloFn exp_scaled(Complex a, Domain domain) {
  return {domain, [a](Complex z) { return std::exp(a * z); }, FnKind::ClosedForm,
          "exp(" + fmt_complex(a) + "*z)"};
}

HoloFn mobius_kernel(Complex a) {
  if (!(std::abs(a) < 1.0)) fail(ErrorKind::InvalidParam, "kernel point must lie in the unit disc");
  const Complex ac = std::conj(a);
  return {Domain::unit_disc(), [ac](Complex z) { return 1.0 / (1.0 - ac * z); },
          FnKind::ClosedForm, "kernel(" + fmt_complex(a) + ")"};
}

HoloFn mobius(Complex a) {
  if (!(std::abs(a) < 1.0)) fail(ErrorKind::InvalidParam, "Möbius parameter must lie in the unit disc");
  const Complex ac = std::conj(a);
  return {Domain::unit_disc(), [a, ac](Complex z) { return (a - z) / (1.0 - ac * z); },
          FnKind::ClosedForm, "mobius(" + fmt_complex(a) + ")"};
}

HoloFn singular_inner() {
  return {Domain::unit_disc(), [](Complex z) { return std::exp((z + 1.0) / (z - 1.0)); },
          FnKind::ClosedForm, "singular-inner"};
}

HoloFn sum(const HoloFn& f, const HoloFn& g) {
  return {f.domain, [f, g](Complex z) { return f(z) + g(z); }, FnKind::Composite,
          "(" + f.label + "+" + g.label + ")"};
}

HoloFn difference(const HoloFn& f, const HoloFn& g) {
  return {f.domain, [f, g](Complex z) { return f(z) - g(z); }, FnKind::Composite,
          "(" + f.label + "-" + g.label + ")"};
}

HoloFn product(const HoloFn& f, const HoloFn& g) {
  return {f.domain, [f, g](Complex z) { return f(z) * g(z); }, FnKind::Composite,
          "(" + f.label + "*" + g.label + ")"};
}

HoloFn scaled(Complex c, const HoloFn& f) {
  return {f.domain, [c, f](Complex z) { return c * f(z); }, FnKind::Composite,
          fmt_complex(c) + "*" + f.label};
}

HoloFn compose(const HoloFn& outer, const HoloFn& inner) {
  return {inner.domain, [outer, inner](Complex z) { return outer(inner(z)); }, FnKind::Composite,
          outer.label + "o" + inner.label};
}

}  // namespace fns

// ---------------------------------------------------------------------------

const GaussRule& gauss_legendre(int n) {
  if (n < 1) fail(ErrorKind::InvalidParam, "Gauss-Legendre rule needs at least one node");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (slot) return *slot;

  auto rule = std::make_unique<GaussRule>();
  rule->nodes.assign(n, 0.0);
  rule->weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) {
      dp = 1.0;
    } else {
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->nodes[i] = -x;
    rule->nodes[n - 1 - i] = x;
    rule->weights[i] = w;
    rule->weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule->nodes[n / 2] = 0.0;
  slot = std::move(rule);
  return *slot;
}

Complex integrate_gl(const std::function<Complex(double)>& g, double a, double b, int n) {
  const auto& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex acc{0.0, 0.0};
  for (int i = 0; i < n; ++i) acc += rule.weights[i] * g(mid + half * rule.nodes[i]);
  return acc * half;
}

double integrate_gl_real(const std::function<double(double)>& g, double a, double b, int n) {
  const auto& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += rule.weights[i] * g(mid + half * rule.nodes[i]);
  return acc * half;
}

// ---------------------------------------------------------------------------

Complex cauchy_derivative(const HoloFn& f, Complex z, double radius, const QuadPolicy& policy) {
  if (f.domain.is_real()) {
    fail(ErrorKind::InvalidParam, "Cauchy differentiation needs a complex domain: " + f.label);
  }
  if (!(radius > 0.0)) fail(ErrorKind::InvalidParam, "contour radius must be positive");
  if (f.domain.is_bounded() && !(std::abs(z) + radius < f.domain.radius)) {
    fail(ErrorKind::DomainExit, "Cauchy contour around " + fmt_complex(z) + " leaves " +
                                    f.domain.describe());
  }
  double max_abs = 0.0;
  int n = 16;
  Complex prev = cauchy_trapezoid(f, z, radius, n, max_abs);
  double diff = 0.0;
  double threshold = 0.0;
  Complex cur = prev;
  const int n_limit = std::max(kMaxCauchyNodes, 2 * policy.n_theta);
  while (true) {
    n *= 2;
    cur = cauchy_trapezoid(f, z, radius, n, max_abs);
    diff = std::abs(cur - prev);
    threshold = policy.tol * std::abs(cur) + 1e3 * kEps * max_abs / radius;
    if (diff <= threshold || n >= n_limit) break;
    prev = cur;
  }
  if (diff > 100.0 * threshold) {
    fail(ErrorKind::NonConvergent, "Cauchy derivative at " + fmt_complex(z) + " of " + f.label +
                                       " did not settle under node doubling");
  }
  return cur;
}

Complex derivative(const HoloFn& f, Complex z, const QuadPolicy& policy) {
  if (f.domain.is_real()) return real_derivative(f, z.real());
  double radius = 0.5;
  if (f.domain.is_bounded()) radius = std::min(0.5 * f.domain.boundary_distance(z), 0.25);
  if (!(radius > 0.0)) fail(ErrorKind::DomainExit, "derivative requested outside " + f.domain.describe());
  return cauchy_derivative(f, z, radius, policy);
}

HoloFn derivative_fn(const HoloFn& f, const QuadPolicy& policy) {
  return {f.domain, [f, policy](Complex z) { return derivative(f, z, policy); }, FnKind::Composite,
          f.label + "'"};
}

double circle_mean_p(const HoloFn& f, double r, double p, int nodes) {
  if (f.domain.is_bounded() && !(r >= 0.0 && r < f.domain.radius)) {
    fail(ErrorKind::DomainExit, "circle radius outside " + f.domain.describe());
  }
  if (r == 0.0) {
    const Complex v = f(Complex(0.0, 0.0));
    if (!is_finite(v)) fail(ErrorKind::Unbounded, "non-finite value of " + f.label);
    return std::pow(std::abs(v), p);
  }
  double acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const Complex v = f(std::polar(r, kTwoPi * k / nodes));
    if (!is_finite(v)) fail(ErrorKind::Unbounded, "non-finite value of " + f.label + " on a circle");
    acc += std::pow(std::abs(v), p);
  }
  return acc / nodes;
}

double circle_mean_p(const HoloFn& f, double r, double p, const QuadPolicy& policy) {
  return circle_mean_p(f, r, p, policy.n_theta);
}

namespace {

struct DiscSums {
  double value;
  double abs_value;
};

DiscSums disc_sums(const std::function<double(Complex)>& g, double r, int n_radial, int n_theta) {
  const auto& rule = gauss_legendre(n_radial);
  double acc = 0.0;
  double acc_abs = 0.0;
  for (int i = 0; i < n_radial; ++i) {
    const double rho = 0.5 * r * (1.0 + rule.nodes[i]);
    double ring = 0.0;
    double ring_abs = 0.0;
    for (int k = 0; k < n_theta; ++k) {
      const double v = g(std::polar(rho, kTwoPi * k / n_theta));
      if (!std::isfinite(v)) fail(ErrorKind::Unbounded, "non-finite disc integrand");
      ring += v;
      ring_abs += std::abs(v);
    }
    const double scale = rule.weights[i] * rho * (kTwoPi / n_theta);
    acc += scale * ring;
    acc_abs += scale * ring_abs;
  }
  return {0.5 * r * acc, 0.5 * r * acc_abs};
}

int clustering_power(double alpha) {
  for (int q = 1; q <= 12; ++q) {
    const double e = q * (alpha + 1.0) - 1.0;
    if (e > -1e-12 && std::abs(e - std::round(e)) < 1e-12) return q;
  }
  return 8;
}

}  // namespace

double disc_integral(const std::function<double(Complex)>& g, double r, const QuadPolicy& policy) {
  policy.validate();
  if (!(r > 0.0 && r <= policy.r_cap)) fail(ErrorKind::InvalidParam, "disc radius must lie in (0, r_cap]");
  const auto coarse = disc_sums(g, r, policy.n_radial, policy.n_theta);
  const auto fine = disc_sums(g, r, 2 * policy.n_radial, 2 * policy.n_theta);
  const double scale = std::max(coarse.abs_value, fine.abs_value);
  if (std::abs(fine.value - coarse.value) > 100.0 * policy.tol * scale) {
    fail(ErrorKind::NonConvergent, "disc integral changed under node doubling");
  }
  return fine.value;
}

double weighted_disc_average(const std::function<double(double)>& circle_mean, double alpha,
                             double r, int n_radial) {
  if (!(alpha > -1.0)) fail(ErrorKind::InvalidParam, "weight exponent must exceed -1");
  if (!(r > 0.0 && r <= 1.0)) fail(ErrorKind::InvalidParam, "radius must lie in (0,1]");
  const int q = clustering_power(alpha);
  const double exponent = q * (alpha + 1.0) - 1.0;
  // u = 1 - |z|^2 = w^q maps the weight u^alpha du onto w^exponent dw.
  const double w_lo = std::pow(std::max(0.0, 1.0 - r * r), 1.0 / q);
  const auto integrand = [&](double w) {
    const double u = std::pow(w, q);
    const double rho = std::sqrt(std::max(0.0, 1.0 - u));
    return std::pow(w, exponent) * circle_mean(rho);
  };
  return (alpha + 1.0) * q * integrate_gl_real(integrand, w_lo, 1.0, n_radial);
}

// ---------------------------------------------------------------------------

Extrapolation extrapolate_to_zero(std::span<const Complex> values, std::span<const double> steps) {
  const std::size_t n = values.size();
  if (n == 0 || steps.size() != n) fail(ErrorKind::InvalidParam, "extrapolation needs matching steps");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(steps[i] > 0.0) || (i > 0 && !(steps[i] < steps[i - 1]))) {
      fail(ErrorKind::InvalidParam, "steps must be positive and strictly decreasing");
    }
  }
  // Neville tableau evaluated at h = 0.
  std::vector<Complex> table(values.begin(), values.end());
  double last_correction = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = n - 1; i >= k; --i) {
      const double ratio = steps[i - k] / steps[i];
      const Complex correction = (table[i] - table[i - 1]) / (ratio - 1.0);
      table[i] = table[i] + correction;
      if (i == n - 1) last_correction = std::abs(correction);
    }
  }
  double order = std::numeric_limits<double>::quiet_NaN();
  if (n >= 3) {
    const double d1 = std::abs(values[n - 3] - values[n - 2]);
    const double d2 = std::abs(values[n - 2] - values[n - 1]);
    if (d1 > 0.0 && d2 > 0.0) order = std::log(d1 / d2) / std::log(steps[n - 3] / steps[n - 2]);
  }
  return {table[n - 1], order, last_correction};
}

std::vector<Complex> sample_grid(const Domain& domain, double radius, int rings, int spokes) {
  std::vector<Complex> grid;
  if (domain.is_real()) {
    const int n = std::max(2, rings * spokes / 2);
    for (int i = 0; i <= n; ++i) grid.emplace_back(-radius + 2.0 * radius * i / n, 0.0);
    return grid;
  }
  grid.emplace_back(0.0, 0.0);
  for (int j = 1; j <= rings; ++j) {
    const double rho = radius * j / rings;
    for (int k = 0; k < spokes; ++k) grid.push_back(std::polar(rho, kTwoPi * k / spokes));
  }
  return grid;
}

}  // namespace wcsg
